"""Multipliers between model spaces: constructive numerics and checks."""

from .clark import (AtomicMeasure, absolute_continuity_multiplier,
                    clark_measure, poisson_identity_residual)
from .grids import DiskGrid, LineGrid, default_disk_grid
from .inner import (AtomicSingular, BoundarySpectrumEstimate, CertifiedValue,
                    FiniteBlaschke, FrostmanShift, GeometricZeros,
                    InfiniteBlaschke, InnerFunction, ProductInner,
                    boundary_spectrum, frostman_shift, sublevel_contained)
from .modelspace import (KernelFunction, ModelSpaceBasis, crofoot_transform,
                         gram_matrix, interpolate, kernel_norm_sq,
                         model_space_basis)
from .multiplier import (CarlesonReport, GrowthRule, MultiplierBasis,
                         cohn_carleson_sup, kernel_spot_residual,
                         membership_check, multiplier_basis,
                         necessary_condition_sup, outer_factor_check,
                         toeplitz_finite_section_dim, toeplitz_kernel_dim)
from .numerics import (CircleQuadrature, Polynomial, RationalFunction,
                       fourier_coefficients, nullspace, poly_from_roots)

__version__ = "0.1.0"
