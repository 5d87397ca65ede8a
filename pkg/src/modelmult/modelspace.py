"""Model spaces attached to inner functions.

Reproducing kernels, the rational basis of a finite-degree model space,
circle-quadrature Gram matrices, least-norm interpolation, and the Crofoot
transform onto the shifted space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IllConditionedError
from .inner import FiniteBlaschke, InnerFunction
from .numerics import (CircleQuadrature, Polynomial, RationalFunction,
                       poly_divide_exact, poly_from_roots)

COND_LIMIT = 1e12


def default_quadrature(total_degree: int) -> CircleQuadrature:
    """Quadrature sized for rational integrands: at least 8x the degree."""
    return CircleQuadrature(max(8 * max(total_degree, 1), 1024))


@dataclass(frozen=True)
class KernelFunction:
    """Reproducing kernel of the model space of ``u`` at the point ``lam``."""

    u: InnerFunction
    lam: complex

    def __post_init__(self):
        if abs(self.lam) >= 1.0:
            raise DomainError("kernel point must lie in the open disk")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        ulam = complex(self.u.eval(self.lam))
        return (1.0 - np.conj(ulam) * self.u.values_on(z)) / (1.0 - np.conj(self.lam) * z)

    def as_rational(self) -> RationalFunction:
        """Exact rational form; requires a finite Blaschke ``u``."""
        if not isinstance(self.u, FiniteBlaschke):
            raise DomainError("rational kernel form needs a finite Blaschke product")
        rat = self.u.as_rational()
        ulam = complex(self.u.eval(self.lam))
        num = rat.denominator - np.conj(ulam) * rat.numerator
        p = poly_divide_exact(num, Polynomial([1.0, -np.conj(self.lam)]))
        return RationalFunction(p, rat.denominator, rat.den_roots)


def kernel_norm_sq(u: InnerFunction, lam: complex) -> float:
    """Squared norm of the reproducing kernel: (1-|u(lam)|^2)/(1-|lam|^2)."""
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise DomainError("kernel point must lie in the open disk")
    ulam = complex(u.eval(lam))
    return (1.0 - abs(ulam) ** 2) / (1.0 - abs(lam) ** 2)


@dataclass(frozen=True)
class ModelSpaceBasis:
    """Monomial-over-denominator basis z^k / prod(1 - conj(a_j) z)."""

    u: FiniteBlaschke
    elements: tuple

    @property
    def dimension(self) -> int:
        return len(self.elements)


def model_space_basis(u: FiniteBlaschke) -> ModelSpaceBasis:
    if not isinstance(u, FiniteBlaschke):
        raise DomainError("finite-dimensional basis needs a finite Blaschke product")
    n = u.degree
    if n < 1:
        raise DomainError("degree must be at least 1")
    den = Polynomial([1.0])
    roots = []
    for a in u.zeros:
        if a != 0:
            den = den * Polynomial([1.0, -np.conj(a)])
            roots.append(1.0 / np.conj(a))
    elems = []
    for k in range(n):
        num = Polynomial([0.0] * k + [1.0])
        elems.append(RationalFunction(num, den, tuple(roots)))
    return ModelSpaceBasis(u=u, elements=tuple(elems))


def gram_matrix(functions, quad: CircleQuadrature) -> np.ndarray:
    """Hermitian Gram matrix of the functions under circle quadrature."""
    vals = np.stack([quad.sample(f) for f in functions])
    g = (vals * quad.weight) @ vals.conj().T
    return 0.5 * (g + g.conj().T)


@dataclass(frozen=True)
class InterpolationResult:
    """Interpolant as a kernel combination.

    Calling the result evaluates the numerically stable kernel sum; the
    coefficient-form rational function is exposed for structural use but
    cancels badly when the nodes crowd the boundary.
    """

    function: RationalFunction
    condition_number: float
    max_defect: float
    coefficients: np.ndarray
    kernels: tuple

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for c, k in zip(self.coefficients, self.kernels):
            out = out + c * k(z)
        return out


def interpolate(u: FiniteBlaschke, nodes, values) -> InterpolationResult:
    """Element of the model space of ``u`` matching the given node values.

    Solves the dense kernel-evaluation system; the condition number is always
    reported because clustered nodes degrade it quickly.
    """
    nodes = [complex(z) for z in nodes]
    values = np.asarray([complex(w) for w in values])
    n = u.degree
    if len(nodes) != n or values.size != n:
        raise DomainError(f"need exactly {n} nodes and values for degree {n}")
    if len({(z.real, z.imag) for z in nodes}) != n:
        raise DomainError("interpolation nodes must be distinct")
    for z in nodes:
        if abs(z) >= 1.0:
            raise DomainError(f"node {z} is not in the open unit disk")

    kernels = [KernelFunction(u, z) for z in nodes]
    K = np.empty((n, n), dtype=complex)
    node_arr = np.asarray(nodes)
    for i, k in enumerate(kernels):
        K[:, i] = k(node_arr)
    cond = float(np.linalg.cond(K))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllConditionedError(
            f"kernel evaluation matrix has condition number {cond:.3e}", cond)
    coef = np.linalg.solve(K, values)

    rat = u.as_rational()
    num = Polynomial([0.0])
    for c, k in zip(coef, kernels):
        num = num + c * k.as_rational().numerator
    f = RationalFunction(num.trimmed(1e-14), rat.denominator, rat.den_roots)
    result = InterpolationResult(function=f, condition_number=cond,
                                 max_defect=0.0, coefficients=coef,
                                 kernels=tuple(kernels))
    defect = float(np.max(np.abs(result(node_arr) - values)))
    object.__setattr__(result, "max_defect", defect)
    return result


def crofoot_transform(u: InnerFunction, a: complex, f):
    """Multiply by sqrt(1-|a|^2)/(1 - conj(a) u); unitary onto the shifted space."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise DomainError("shift parameter must lie in the open disk")
    if a == 0:
        return f
    scale = np.sqrt(1.0 - abs(a) ** 2)

    def image(z):
        z = np.asarray(z, dtype=complex)
        return scale * np.asarray(f(z)) / (1.0 - np.conj(a) * u.values_on(z))

    return image
