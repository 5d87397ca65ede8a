"""Inner functions on the unit disk.

Finite and infinite Blaschke products, atomic singular inner functions,
products, and Frostman shifts.  Every variant evaluates with an explicit
error bound; infinite products pick their truncation per evaluation point so
the certified bound stays below the requested target.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, TruncationError
from .numerics import Polynomial, RationalFunction, poly_from_roots

_EPS = np.finfo(float).eps

INFINITE_EVAL_TARGET = 1e-8
_MAX_TRUNCATION = 5_000_000


@dataclass(frozen=True)
class CertifiedValue:
    value: complex
    error: float

    def __complex__(self):
        return complex(self.value)


def _check_interior(z: complex):
    if abs(z) >= 1.0:
        raise DomainError(f"point {z} is not in the open unit disk")


def blaschke_factor(a: complex, z):
    """Single Blaschke factor, normalized so the factor for a = 0 is z."""
    z = np.asarray(z, dtype=complex)
    if a == 0:
        return z
    return (abs(a) / a) * (a - z) / (1.0 - np.conj(a) * z)


class InnerFunction:
    """Base class; subclasses implement vectorized evaluation with bounds."""

    def values_on(self, zs) -> np.ndarray:
        """Vectorized values at interior points (no certification)."""
        raise NotImplementedError

    def eval(self, z: complex) -> CertifiedValue:
        """Value at an interior point together with an error bound."""
        _check_interior(complex(z))
        return self._eval_certified(complex(z))

    def _eval_certified(self, z: complex) -> CertifiedValue:
        raise NotImplementedError

    def eval_continued(self, z: complex) -> complex:
        """Meromorphic continuation outside the disk where available."""
        raise DomainError(f"{type(self).__name__} has no continuation rule")

    def modulus_on(self, zs) -> np.ndarray:
        return np.abs(self.values_on(zs))

    def spectrum(self) -> "BoundarySpectrumEstimate":
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# finite Blaschke products
# ---------------------------------------------------------------------------

class FiniteBlaschke(InnerFunction):
    """Finite Blaschke product given by its zeros (repeated by multiplicity)."""

    def __init__(self, zeros):
        zeros = tuple(complex(a) for a in zeros)
        for a in zeros:
            if abs(a) >= 1.0 - 1e-12:
                raise DomainError(f"Blaschke zero {a} must satisfy |a| < 1 - 1e-12")
        self.zeros = zeros

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def values_on(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        out = np.ones_like(zs)
        for a in self.zeros:
            out = out * blaschke_factor(a, zs)
        return out

    def _eval_certified(self, z: complex) -> CertifiedValue:
        val = complex(self.values_on(np.array([z]))[0])
        slack = 3.0 * len(self.zeros)
        for a in self.zeros:
            if a != 0:
                slack += 2.0 / abs(1.0 - np.conj(a) * z)
        return CertifiedValue(val, float(_EPS * (slack + 2.0)))

    def eval_continued(self, z: complex) -> complex:
        return complex(self.values_on(np.array([z]))[0])

    @cached_property
    def _rational(self) -> RationalFunction:
        num = poly_from_roots(self.zeros)
        c = 1.0 + 0j
        den = Polynomial([1.0])
        roots = []
        for a in self.zeros:
            if a != 0:
                c *= -abs(a) / a
                den = den * Polynomial([1.0, -np.conj(a)])
                roots.append(1.0 / np.conj(a))
        return RationalFunction(num * c, den, tuple(roots))

    def as_rational(self) -> RationalFunction:
        return self._rational

    def log_derivative_on(self, zs) -> np.ndarray:
        """u'/u, summed over factors; valid away from zeros and poles."""
        zs = np.asarray(zs, dtype=complex)
        s = np.zeros_like(zs)
        for a in self.zeros:
            if a == 0:
                s = s + 1.0 / zs
            else:
                s = s + (-1.0) / (a - zs) + np.conj(a) / (1.0 - np.conj(a) * zs)
        return s

    def spectrum(self) -> "BoundarySpectrumEstimate":
        return BoundarySpectrumEstimate(points=(), is_exact=True)

    def describe(self) -> dict:
        return {"kind": "finite_blaschke",
                "zeros": [[a.real, a.imag] for a in self.zeros]}


# ---------------------------------------------------------------------------
# infinite Blaschke products
# ---------------------------------------------------------------------------

class GeometricZeros:
    """Zeros (1 - ratio^n) * direction, n >= 1; a Blaschke sequence for ratio < 1."""

    def __init__(self, ratio: float, direction: complex = 1.0 + 0j):
        if not (0.0 < ratio < 1.0):
            raise DomainError("ratio must lie in (0, 1)")
        d = complex(direction)
        if d == 0:
            raise DomainError("direction must be nonzero")
        self.ratio = float(ratio)
        self.direction = d / abs(d)

    def zeros(self, start: int, stop: int) -> np.ndarray:
        n = np.arange(start, stop, dtype=float)
        return (1.0 - self.ratio ** n) * self.direction

    def tail_remaining(self, n_used: int) -> float:
        """Certified bound on sum of (1 - |zero_n|) over n > n_used."""
        return self.ratio ** (n_used + 1) / (1.0 - self.ratio)

    def accumulation_points(self):
        return (self.direction,)

    def describe(self) -> dict:
        return {"name": "radial_geometric", "ratio": self.ratio,
                "direction": [self.direction.real, self.direction.imag]}


class InfiniteBlaschke(InnerFunction):
    """Infinite Blaschke product from a zero rule with a certified tail bound."""

    def __init__(self, rule, target: float = INFINITE_EVAL_TARGET):
        self.rule = rule
        self.target = float(target)

    def _truncation_for(self, radius: float) -> int:
        c = (1.0 + radius) / (1.0 - radius)
        # |1 - prod tail factors| <= exp(c * tail) - 1, want <= target
        need = np.log1p(self.target) / c
        n = 1
        while self.rule.tail_remaining(n) > need:
            n *= 2
            if n > _MAX_TRUNCATION:
                achieved = float(np.expm1(c * self.rule.tail_remaining(_MAX_TRUNCATION)))
                raise TruncationError(
                    f"tail bound {self.target:g} unachievable within "
                    f"{_MAX_TRUNCATION} zeros (achieved {achieved:g})",
                    achieved_bound=achieved)
        return n

    def _partial(self, zs: np.ndarray, n_zeros: int) -> np.ndarray:
        out = np.ones_like(zs)
        chunk = 65536
        for lo in range(1, n_zeros + 1, chunk):
            hi = min(lo + chunk, n_zeros + 1)
            lam = self.rule.zeros(lo, hi)
            f = (np.abs(lam)[None, :] / lam[None, :]) * (lam[None, :] - zs[:, None]) \
                / (1.0 - np.conj(lam)[None, :] * zs[:, None])
            out = out * np.prod(f, axis=1)
        return out

    def values_on(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        n = self._truncation_for(float(np.max(np.abs(zs))))
        return self._partial(zs, n)

    def _eval_certified(self, z: complex) -> CertifiedValue:
        n = self._truncation_for(abs(z))
        val = complex(self._partial(np.array([z]), n)[0])
        c = (1.0 + abs(z)) / (1.0 - abs(z))
        trunc = float(np.expm1(c * self.rule.tail_remaining(n)))
        fp = float(_EPS * 4.0 * n * c)
        return CertifiedValue(val, trunc + fp)

    def partial_product(self, z: complex, n_zeros: int) -> complex:
        _check_interior(complex(z))
        return complex(self._partial(np.array([complex(z)]), n_zeros)[0])

    def spectrum(self) -> "BoundarySpectrumEstimate":
        return BoundarySpectrumEstimate(
            points=tuple(self.rule.accumulation_points()), is_exact=True)

    def describe(self) -> dict:
        return {"kind": "infinite_blaschke", "rule": self.rule.describe()}


# ---------------------------------------------------------------------------
# atomic singular inner functions
# ---------------------------------------------------------------------------

class AtomicSingular(InnerFunction):
    """exp of a Herglotz sum against point masses on the circle.

    u(z) = exp( sum_j w_j (z + xi_j) / (z - xi_j) ),  w_j > 0, |xi_j| = 1.
    The single atom at 1 with weight 1 is exp((z+1)/(z-1)).
    """

    def __init__(self, atoms):
        cleaned = []
        for xi, w in atoms:
            xi = complex(xi)
            w = float(w)
            if abs(abs(xi) - 1.0) > 1e-12:
                raise DomainError(f"atom {xi} must lie on the unit circle")
            if w <= 0:
                raise DomainError("atom weights must be positive")
            cleaned.append((xi / abs(xi), w))
        if not cleaned:
            raise DomainError("need at least one atom")
        self.atoms = tuple(cleaned)

    def values_on(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        s = np.zeros_like(zs)
        for xi, w in self.atoms:
            s = s + w * (zs + xi) / (zs - xi)
        return np.exp(s)

    def _eval_certified(self, z: complex) -> CertifiedValue:
        s = 0j
        mag = 0.0
        for xi, w in self.atoms:
            term = w * (z + xi) / (z - xi)
            s += term
            mag += abs(term)
        val = np.exp(s)
        err = float(abs(val) * _EPS * (4.0 * mag + 8.0))
        return CertifiedValue(complex(val), err)

    def eval_continued(self, z: complex) -> complex:
        for xi, _ in self.atoms:
            if abs(z - xi) < 1e-14:
                raise DomainError(f"essential singularity at {xi}")
        return complex(self.values_on(np.array([z]))[0])

    def spectrum(self) -> "BoundarySpectrumEstimate":
        return BoundarySpectrumEstimate(
            points=tuple(xi for xi, _ in self.atoms), is_exact=True)

    def describe(self) -> dict:
        return {"kind": "atomic_singular",
                "atoms": [{"xi": [xi.real, xi.imag], "weight": w}
                          for xi, w in self.atoms]}


# ---------------------------------------------------------------------------
# products and Frostman shifts
# ---------------------------------------------------------------------------

class ProductInner(InnerFunction):
    def __init__(self, *factors):
        flat = []
        for f in factors:
            if isinstance(f, ProductInner):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if len(flat) < 1:
            raise DomainError("product needs at least one factor")
        self.factors = tuple(flat)

    def values_on(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        out = np.ones_like(zs)
        for f in self.factors:
            out = out * f.values_on(zs)
        return out

    def _eval_certified(self, z: complex) -> CertifiedValue:
        val = 1.0 + 0j
        err = 0.0
        for f in self.factors:
            cv = f._eval_certified(z)
            val *= cv.value
            err += cv.error  # factors have modulus <= 1
        return CertifiedValue(val, err + 4.0 * _EPS * len(self.factors))

    def eval_continued(self, z: complex) -> complex:
        out = 1.0 + 0j
        for f in self.factors:
            out *= f.eval_continued(z)
        return out

    def spectrum(self) -> "BoundarySpectrumEstimate":
        specs = [f.spectrum() for f in self.factors]
        pts = []
        for s in specs:
            pts.extend(s.points)
        nonempty = sum(1 for s in specs if s.points)
        # spectra of interacting factors may in principle overlap; the union
        # is only flagged exact when at most one factor contributes
        exact = all(s.is_exact for s in specs) and nonempty <= 1
        return BoundarySpectrumEstimate(points=tuple(pts), is_exact=exact)

    def describe(self) -> dict:
        return {"kind": "product", "factors": [f.describe() for f in self.factors]}


class FrostmanShift(InnerFunction):
    """(u - a) / (1 - conj(a) u) for |a| < 1; inner whenever u is."""

    def __init__(self, base: InnerFunction, a: complex):
        a = complex(a)
        if abs(a) >= 1.0:
            raise DomainError("Frostman parameter must lie in the open disk")
        self.base = base
        self.a = a

    def values_on(self, zs) -> np.ndarray:
        u = self.base.values_on(zs)
        return (u - self.a) / (1.0 - np.conj(self.a) * u)

    def _eval_certified(self, z: complex) -> CertifiedValue:
        cv = self.base._eval_certified(z)
        u = cv.value
        val = (u - self.a) / (1.0 - np.conj(self.a) * u)
        # derivative of the Moebius map in u is (1-|a|^2)/|1-conj(a)u|^2
        lip = (1.0 - abs(self.a) ** 2) / max(abs(1.0 - np.conj(self.a) * u) ** 2, 1e-300)
        return CertifiedValue(val, cv.error * lip + 8.0 * _EPS)

    def eval_continued(self, z: complex) -> complex:
        u = self.base.eval_continued(z)
        return (u - self.a) / (1.0 - np.conj(self.a) * u)

    def spectrum(self) -> "BoundarySpectrumEstimate":
        # a Moebius shift preserves the regular boundary points
        return self.base.spectrum()

    def describe(self) -> dict:
        return {"kind": "frostman_shift", "base": self.base.describe(),
                "a": [self.a.real, self.a.imag]}


def frostman_shift(u: InnerFunction, a: complex) -> InnerFunction:
    a = complex(a)
    if a == 0:
        return u
    return FrostmanShift(u, a)


# ---------------------------------------------------------------------------
# boundary spectrum and sub-level sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundarySpectrumEstimate:
    """Boundary spectrum as a finite set of circle points (degenerate arcs)."""

    points: tuple
    is_exact: bool

    def subset_of(self, other: "BoundarySpectrumEstimate", tol: float = 1e-9) -> bool:
        for p in self.points:
            if not any(abs(p - q) <= tol for q in other.points):
                return False
        return True


def boundary_spectrum(u: InnerFunction) -> BoundarySpectrumEstimate:
    return u.spectrum()


@dataclass(frozen=True)
class SublevelReport:
    contained: bool
    witness: complex | None
    n_checked: int
    n_sublevel: int
    eps_u: float
    eps_v: float

    def to_dict(self) -> dict:
        return {
            "contained": self.contained,
            "witness": None if self.witness is None
            else [self.witness.real, self.witness.imag],
            "n_checked": self.n_checked,
            "n_sublevel": self.n_sublevel,
            "eps_u": self.eps_u,
            "eps_v": self.eps_v,
        }


def sublevel_contained(u: InnerFunction, v: InnerFunction,
                       eps_u: float, eps_v: float, grid) -> SublevelReport:
    """Grid-certified check of {|v| < eps_v} being inside {|u| < eps_u}.

    A finite check over the grid, never a proof; on failure the first
    offending grid point (in fixed grid order) is returned as witness.
    """
    if not (0.0 < eps_u < 1.0 and 0.0 < eps_v < 1.0):
        raise DomainError("levels must lie in (0, 1)")
    pts = grid.points
    mv = u_abs = None
    mv = v.modulus_on(pts)
    inside = mv < eps_v
    witness = None
    if np.any(inside):
        u_abs = u.modulus_on(pts[inside])
        bad = np.flatnonzero(u_abs >= eps_u)
        if bad.size:
            witness = complex(pts[inside][bad[0]])
    return SublevelReport(
        contained=witness is None,
        witness=witness,
        n_checked=int(pts.size),
        n_sublevel=int(np.sum(inside)),
        eps_u=float(eps_u),
        eps_v=float(eps_v),
    )
