"""Multipliers between model spaces.

Exact multiplier bases for pairs of finite Blaschke products, the
divisibility route to the Toeplitz kernel dimension, a finite-section
Toeplitz cross-check, pointwise necessary-condition and Cohn-type Carleson
sweeps with growth detection, membership checks, and outer-factor splitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .grids import DiskGrid
from .inner import FiniteBlaschke, InnerFunction
from .modelspace import model_space_basis
from .numerics import (CircleQuadrature, Polynomial, RationalFunction,
                       fourier_coefficients, nullspace, poly_divide,
                       poly_from_roots)

_TINY = 1e-300


def _conj_linear(zeros) -> Polynomial:
    """prod over zeros of (1 - conj(a) z)."""
    p = Polynomial([1.0])
    for a in zeros:
        p = p * Polynomial([1.0, -np.conj(complex(a))])
    return p


def _check_zeros_in_disk(zeros, what: str):
    for a in zeros:
        if abs(complex(a)) >= 1.0 - 1e-12:
            raise DomainError(f"{what} zero {a} must satisfy |a| < 1 - 1e-12")


def quadrature_for_zeros(*zero_sets, target: float = 1e-13,
                         minimum: int = 2048) -> CircleQuadrature:
    """Quadrature large enough that trapezoid error from the reflected poles
    (geometric with ratio max|zero|) is below ``target``."""
    rate = 0.0
    for zs in zero_sets:
        for a in zs:
            rate = max(rate, abs(complex(a)))
    if rate <= 0.0:
        return CircleQuadrature(minimum)
    n = int(math.ceil(math.log(target) / math.log(rate)))
    return CircleQuadrature(max(minimum, n))


# ---------------------------------------------------------------------------
# exact multiplier basis (finite Blaschke pairs)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplierBasis:
    u_zeros: tuple
    v_zeros: tuple
    elements: tuple

    @property
    def dimension(self) -> int:
        return len(self.elements)


def multiplier_basis(u_zeros, v_zeros, cancel_tol: float = 1e-12) -> MultiplierBasis:
    """Basis z^k prod(1 - conj(a_i) z) / prod(1 - conj(b_j) z), k = 0..n-m.

    Empty when the first product has more zeros than the second; shared
    linear factors are cancelled so printed elements match the reduced form.
    """
    u_zeros = tuple(complex(a) for a in u_zeros)
    v_zeros = tuple(complex(b) for b in v_zeros)
    _check_zeros_in_disk(u_zeros, "first-factor")
    _check_zeros_in_disk(v_zeros, "second-factor")
    m, n = len(u_zeros), len(v_zeros)
    if m > n:
        return MultiplierBasis(u_zeros, v_zeros, ())
    keep_u = list(u_zeros)
    keep_v = list(v_zeros)
    for a in u_zeros:
        for j, b in enumerate(keep_v):
            if abs(a - b) < cancel_tol:
                keep_u.remove(a)
                keep_v.pop(j)
                break
    num0 = _conj_linear(keep_u)
    den = _conj_linear(keep_v)
    roots = tuple(1.0 / np.conj(b) for b in keep_v if b != 0)
    elems = []
    for k in range(n - m + 1):
        num = num0 * Polynomial([0.0] * k + [1.0])
        elems.append(RationalFunction(num, den, roots))
    return MultiplierBasis(u_zeros, v_zeros, tuple(elems))


# ---------------------------------------------------------------------------
# Toeplitz kernel dimension via divisibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelDimResult:
    dimension: int
    elements: tuple
    singular_values: np.ndarray


def _vanishing_conditions(zeros, poly_dim: int) -> np.ndarray:
    """Rows expressing p^(r)(a) = 0 on coefficient vectors of P_{poly_dim-1}."""
    groups: dict = {}
    order = []
    for a in zeros:
        key = complex(a)
        if key not in groups:
            groups[key] = 0
            order.append(key)
        groups[key] += 1
    rows = []
    j = np.arange(poly_dim)
    for a in order:
        for r in range(groups[a]):
            fall = np.ones(poly_dim)
            for i in range(r):
                fall *= np.maximum(j - i, 0)
            with np.errstate(invalid="ignore"):
                pw = np.where(j >= r, np.power(a, np.maximum(j - r, 0)), 0.0)
            rows.append(fall * pw)
    return np.asarray(rows, dtype=complex)


def toeplitz_kernel_dim(u: FiniteBlaschke, v: FiniteBlaschke,
                        tol: float = 1e-8) -> KernelDimResult:
    """Kernel of the compressed multiplication by conj(z v) u on H^2.

    A function phi lies in this kernel exactly when u*phi belongs to the
    model space of z*v, i.e. when the P_n numerator vanishes at the zeros of
    u with multiplicity.  The dimension is max(n - m + 1, 0).
    """
    m, n = u.degree, v.degree
    rows = _vanishing_conditions(u.zeros, n + 1)
    if rows.size == 0:
        ns_basis = np.eye(n + 1, dtype=complex)
        svals = np.zeros(0)
    else:
        norms = np.linalg.norm(rows, axis=1)
        res = nullspace(rows / norms[:, None], tol=tol)
        ns_basis, svals = res.basis, res.singular_values
    deflate = poly_from_roots(u.zeros)
    du = _conj_linear(u.zeros)
    dv = _conj_linear(v.zeros)
    dv_roots = tuple(1.0 / np.conj(b) for b in v.zeros if b != 0)
    elems = []
    for col in range(ns_basis.shape[1]):
        p = Polynomial(ns_basis[:, col])
        q, _ = poly_divide(p, deflate)
        elems.append(RationalFunction(q * du, dv, dv_roots))
    return KernelDimResult(dimension=ns_basis.shape[1], elements=tuple(elems),
                           singular_values=svals)


def toeplitz_finite_section_dim(u: FiniteBlaschke, v: FiniteBlaschke,
                                n_trunc: int = 64, tol: float = 1e-6) -> int:
    """Cross-check: numerical kernel of the truncated Toeplitz matrix.

    Slowly convergent (finite sections see the kernel only through the
    geometric decay of its elements); intended for moderate zeros only.
    """
    def symbol(xi):
        return np.conj(xi * v.values_on(xi)) * u.values_on(xi)

    coeffs = fourier_coefficients(symbol, n_trunc - 1)
    # coeffs index: coeffs[n_trunc - 1 + m] = hat(m)
    idx = np.arange(n_trunc)
    T = coeffs[(n_trunc - 1) + (idx[:, None] - idx[None, :])]
    s = np.linalg.svd(T, compute_uv=False)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return n_trunc
    return int(np.sum(s < tol * smax))


# ---------------------------------------------------------------------------
# membership checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipReport:
    is_multiplier: bool
    max_residual: float
    rel_tol: float
    quad_points: int

    def to_dict(self) -> dict:
        return {"is_multiplier": self.is_multiplier,
                "max_residual": self.max_residual,
                "rel_tol": self.rel_tol,
                "quad_points": self.quad_points}


def membership_check(phi, u: FiniteBlaschke, v: FiniteBlaschke,
                     quad: CircleQuadrature | None = None,
                     rel_tol: float = 1e-8) -> MembershipReport:
    """phi maps the model space of u into that of v (finite-degree check).

    True when phi times each basis element of the first space is
    quadrature-orthogonal to v z^t for t = 0..2n, with residuals measured
    relative to the norm of the tested product.
    """
    n = v.degree
    if quad is None:
        phi_poles = phi.poles if isinstance(phi, RationalFunction) else ()
        quad = quadrature_for_zeros(u.zeros, v.zeros,
                                    [1.0 / p for p in phi_poles if abs(p) > 1])
    basis = model_space_basis(u)
    nodes = quad.nodes
    phi_vals = np.asarray(phi(nodes), dtype=complex)
    v_vals = v.values_on(nodes)
    worst = 0.0
    for e in basis.elements:
        prod = phi_vals * e(nodes)
        scale = max(float(np.sqrt(np.mean(np.abs(prod) ** 2))), _TINY)
        for t in range(2 * n + 1):
            resid = abs(np.mean(prod * np.conj(v_vals * nodes ** t)))
            worst = max(worst, resid / scale)
    return MembershipReport(is_multiplier=worst < rel_tol, max_residual=worst,
                            rel_tol=rel_tol, quad_points=quad.n_points)


def kernel_spot_residual(phi: RationalFunction, u: InnerFunction,
                         i_factor: FiniteBlaschke, lam: complex, t: int,
                         quad: CircleQuadrature) -> float:
    """Spot membership residual of phi for the pair (u, u*I) at one kernel.

    Tests <phi k_lam, (u I) z^t> = 0 by two independent routes: a blind
    quadrature for the part where u cancels against its boundary conjugate,
    and a reflected-point evaluation (contour pushed outward) for the part
    carrying 1/u.  Requires the poles of phi to sit at reflected zeros of I,
    which holds for elements of the model space of z*I.
    """
    lam = complex(lam)
    if not (0 < abs(lam) < 1):
        raise DomainError("spot point must be in the punctured open disk")
    refl = {complex(1.0 / np.conj(b)) for b in i_factor.zeros}
    for p in phi.poles:
        if not any(abs(p - r) < 1e-9 for r in refl):
            raise DomainError("phi must have poles only at reflected zeros of I")

    nodes = quad.nodes
    integrand = (phi(nodes) * nodes ** (-t)
                 / ((1.0 - np.conj(lam) * nodes) * i_factor.values_on(nodes)))
    B = complex(np.mean(integrand))

    zr = 1.0 / np.conj(lam)
    A = (np.conj(lam) ** t * complex(phi(zr))
         / (i_factor.eval_continued(zr) * u.eval_continued(zr)))
    u_lam = complex(u.eval(lam))
    scale = max(abs(A), abs(B), _TINY)
    return abs(A - np.conj(u_lam) * B) / scale


# ---------------------------------------------------------------------------
# Carleson-type sup sweeps with growth detection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthRule:
    """Growth flag: the last ray value exceeds ``factor`` times the value
    ``window`` dyadic steps earlier."""

    window: int = 4
    factor: float = 4.0

    def to_dict(self) -> dict:
        return {"window": self.window, "factor": self.factor}


@dataclass(frozen=True)
class RayTable:
    direction: complex
    radii: tuple
    values: tuple
    window_factor: float | None

    def to_dict(self) -> dict:
        return {"direction": [self.direction.real, self.direction.imag],
                "radii": list(self.radii),
                "values": list(self.values),
                "window_factor": self.window_factor}


@dataclass(frozen=True)
class CarlesonReport:
    statistic: str
    sup_value: float
    argmax: complex
    verdict: str
    grid_spec: dict
    rule: GrowthRule
    rays: tuple
    n_points: int
    n_skipped: int
    notes: tuple = field(default=())
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "sup_value": self.sup_value,
            "argmax": [self.argmax.real, self.argmax.imag],
            "verdict": self.verdict,
            "grid": self.grid_spec,
            "growth_rule": self.rule.to_dict(),
            "rays": [r.to_dict() for r in self.rays],
            "n_points": self.n_points,
            "n_skipped": self.n_skipped,
            "notes": list(self.notes),
            "extras": self.extras,
        }


def _assemble_report(statistic, grid: DiskGrid, values, skip_mask, rule,
                     notes=(), extras=None) -> CarlesonReport:
    pts = grid.points
    ok = ~skip_mask & np.isfinite(values)
    if not np.any(ok):
        raise DomainError("every grid point was skipped")
    vals = np.where(ok, values, -np.inf)
    imax = int(np.argmax(vals))
    sup = float(vals[imax])

    n_circle = len(grid.radii) * grid.n_angles
    rays = []
    detected = False
    for r_i, direction in enumerate(grid.rays):
        lo = n_circle + r_i * len(grid.radii)
        ray_vals = values[lo: lo + len(grid.radii)]
        ray_ok = ok[lo: lo + len(grid.radii)]
        wf = None
        w = min(rule.window, len(grid.radii) - 1)
        if w >= 1 and ray_ok[-1] and ray_ok[-1 - w]:
            older = ray_vals[-1 - w]
            wf = float(ray_vals[-1] / older) if older > 0 else float("inf")
            if wf > rule.factor:
                detected = True
        rays.append(RayTable(direction=direction, radii=grid.radii,
                             values=tuple(float(x) for x in ray_vals),
                             window_factor=wf))
    return CarlesonReport(
        statistic=statistic, sup_value=sup, argmax=complex(pts[imax]),
        verdict="growth-detected" if detected else "bounded-on-grid",
        grid_spec=grid.spec(), rule=rule, rays=tuple(rays),
        n_points=int(pts.size), n_skipped=int(np.sum(skip_mask)),
        notes=tuple(notes), extras=extras or {})


def necessary_condition_sup(phi, u: InnerFunction, v: InnerFunction,
                            grid: DiskGrid,
                            rule: GrowthRule = GrowthRule()) -> CarlesonReport:
    """Sup of |phi|^2 (1 - |u|^2) / (1 - |v|^2) over the grid.

    Any multiplier between the two model spaces keeps this bounded; points
    where |v| is within 1e-14 of 1 are skipped with a note.
    """
    pts = grid.points
    phi_abs2 = np.abs(np.asarray(phi(pts), dtype=complex)) ** 2
    u_abs2 = u.modulus_on(pts) ** 2
    v_abs2 = v.modulus_on(pts) ** 2
    skip = v_abs2 >= (1.0 - 1e-14) ** 2
    notes = []
    if np.any(skip):
        notes.append(f"skipped {int(np.sum(skip))} points with |v| >= 1 - 1e-14")
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = phi_abs2 * (1.0 - u_abs2) / (1.0 - v_abs2)
    return _assemble_report("necessary_condition", grid, vals, skip, rule, notes)


def poisson_extension(boundary_sq_values: np.ndarray, points: np.ndarray,
                      rel_tail: float = 1e-12):
    """Harmonic extension of nonnegative boundary data via its Fourier series.

    Returns the extension values at the interior points and the recorded
    truncation estimate of the dropped coefficient tail.
    """
    N = boundary_sq_values.size
    hat = np.fft.fft(boundary_sq_values) / N
    M = N // 2 - 1
    cm = hat[1: M + 1]
    r_max = float(np.max(np.abs(points)))
    weights = np.abs(cm) * r_max ** np.arange(1, M + 1)
    suffix = np.cumsum(weights[::-1])[::-1]  # suffix[i] = sum_{k >= i+1} |c_k| r^k
    scale = max(abs(hat[0]), _TINY)
    keep = np.flatnonzero(2.0 * suffix > rel_tail * scale)
    m_used = int(keep[-1] + 1) if keep.size else 0
    tail = float(2.0 * suffix[m_used]) if m_used < M else 0.0
    acc = np.zeros_like(points)
    for m in range(m_used, 0, -1):
        acc = acc * points + cm[m - 1]
    acc = acc * points
    return np.real(hat[0]) + 2.0 * np.real(acc), tail, m_used


def cohn_carleson_sup(phi, u: InnerFunction, grid: DiskGrid,
                      quad: CircleQuadrature,
                      rule: GrowthRule = GrowthRule()) -> CarlesonReport:
    """Sup of (1 - |u|^2) times the Poisson integral of |phi|^2 over the grid.

    The Poisson integral is evaluated through the Fourier coefficients of the
    boundary trace |phi|^2 sampled on the supplied quadrature.
    """
    pts = grid.points
    boundary = np.abs(np.asarray(phi(quad.nodes), dtype=complex)) ** 2
    pvals, tail, m_used = poisson_extension(boundary, pts)
    u_abs2 = u.modulus_on(pts) ** 2
    vals = (1.0 - u_abs2) * pvals
    skip = np.zeros(pts.size, dtype=bool)
    extras = {"quad_points": quad.n_points, "fourier_modes_used": m_used,
              "poisson_tail_estimate": tail}
    return _assemble_report("cohn_poisson", grid, vals, skip, rule, extras=extras)


# ---------------------------------------------------------------------------
# outer factor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OuterFactorResult:
    outer: RationalFunction
    inner_zeros: tuple
    modulus_residual: float


def outer_factor_check(phi: RationalFunction,
                       boundary_tol: float = 1e-9) -> OuterFactorResult:
    """Split off the Blaschke factor carried by the disk zeros of phi.

    Replaces each numerator root a inside the disk by (1 - conj(a) z), which
    has the same modulus on the circle, so the returned function is outer
    with |outer| = |phi| on the boundary (verified by quadrature).
    """
    if not phi.h2_safe():
        raise DomainError("phi must have no poles in the closed unit disk")
    roots = phi.numerator.roots()
    lead = phi.numerator.coef[-1]
    inside, outside = [], []
    for r in roots:
        if abs(abs(r) - 1.0) <= boundary_tol:
            raise DomainError(
                f"numerator zero {r} on the unit circle: inner/outer split "
                "is ambiguous at this scale")
        (inside if abs(r) < 1.0 else outside).append(r)
    num = poly_from_roots(outside) * lead
    for a in inside:
        num = num * Polynomial([1.0, -np.conj(a)])
    outer = RationalFunction(num, phi.denominator)
    quad = quadrature_for_zeros([1.0 / p for p in phi.poles],
                                [a for a in inside], minimum=1024)
    resid = float(np.max(np.abs(np.abs(outer(quad.nodes)) - np.abs(phi(quad.nodes)))))
    return OuterFactorResult(outer=outer, inner_zeros=tuple(inside),
                             modulus_residual=resid)
