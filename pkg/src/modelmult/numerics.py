"""Shared numerical kernels.

Unit-circle quadrature, Fourier coefficients of boundary traces, dense
SVD-based nullspaces, and small polynomial / rational-function arithmetic in
monomial basis.  Everything here is plain double precision; problem sizes are
tiny (matrices at most a few dozen rows, polynomial degrees capped at 512).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError, EvaluationError

MAX_POLY_DEGREE = 512


# ---------------------------------------------------------------------------
# circle quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleQuadrature:
    """Uniform trapezoid rule on ``n_points`` equispaced circle nodes.

    Exact for trigonometric polynomials of degree < ``n_points``; converges
    geometrically for boundary traces of rational functions with poles off
    the unit circle.
    """

    n_points: int

    def __post_init__(self):
        if self.n_points < 1:
            raise DomainError("quadrature needs at least one node")

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.n_points) / self.n_points)

    @property
    def weight(self) -> float:
        return 1.0 / self.n_points

    def sample(self, f) -> np.ndarray:
        vals = np.asarray(f(self.nodes), dtype=complex)
        if vals.shape != self.nodes.shape:
            vals = np.broadcast_to(vals, self.nodes.shape)
        return vals

    def integrate(self, f) -> complex:
        """Integrate f against normalized Lebesgue measure on the circle."""
        vals = self.sample(f)
        bad = np.flatnonzero(~np.isfinite(vals))
        if bad.size:
            k = int(bad[0])
            raise EvaluationError(
                f"non-finite boundary value at node {k} "
                f"(e^(2*pi*i*{k}/{self.n_points}))"
            )
        return complex(np.mean(vals))

    def inner(self, f, g) -> complex:
        """L2(circle) inner product <f, g> = int f conj(g) dm."""
        return self.integrate(lambda z: np.asarray(f(z)) * np.conj(np.asarray(g(z))))

    def norm_sq(self, f) -> float:
        return float(np.real(self.inner(f, f)))


def fourier_coefficients(f, n: int) -> np.ndarray:
    """Fourier coefficients of a boundary trace, indices -n..n.

    Uses the uniform rule with ``8*n`` nodes, so the result is exact for
    trigonometric polynomials of degree <= n (aliasing starts at 8n - n).
    Returns an array ``c`` of length ``2n + 1`` with ``c[n + m]`` the
    coefficient of ``e^{im theta}``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    N = 8 * n
    quad = CircleQuadrature(N)
    vals = quad.sample(f)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        k = int(bad[0])
        raise EvaluationError(
            f"non-finite boundary value at node {k} (e^(2*pi*i*{k}/{N}))"
        )
    hat = np.fft.fft(vals) / N  # hat[m] = (1/N) sum_k vals_k e^{-2 pi i k m / N}
    out = np.empty(2 * n + 1, dtype=complex)
    for m in range(-n, n + 1):
        out[n + m] = hat[m % N]
    return out


# ---------------------------------------------------------------------------
# dense nullspace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NullspaceResult:
    basis: np.ndarray          # (ncols, dim), orthonormal columns
    dimension: int
    singular_values: np.ndarray


def nullspace(matrix, tol: float = 1e-8) -> NullspaceResult:
    """Orthonormal basis of the numerical right kernel of a dense matrix.

    A right singular vector belongs to the kernel when its singular value is
    below ``tol`` times the largest singular value.
    """
    a = np.atleast_2d(np.asarray(matrix, dtype=complex))
    if a.size == 0:
        raise DomainError("empty matrix has no nullspace decomposition")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix entries must be finite")
    if tol <= 0:
        raise DomainError("tol must be positive")
    _, s, vh = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s >= tol * smax))
    basis = vh[rank:].conj().T
    return NullspaceResult(basis=basis, dimension=a.shape[1] - rank,
                           singular_values=s)


# ---------------------------------------------------------------------------
# polynomials (monomial basis, ascending coefficients)
# ---------------------------------------------------------------------------

def _trim(coef: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(coef != 0)
    if nz.size == 0:
        return np.zeros(1, dtype=complex)
    return coef[: nz[-1] + 1]


@dataclass(frozen=True)
class Polynomial:
    """Immutable polynomial with complex coefficients in ascending degree."""

    coefficients: tuple = field(default=(0j,))

    def __init__(self, coefficients):
        coef = _trim(np.asarray(list(coefficients), dtype=complex))
        if coef.size - 1 > MAX_POLY_DEGREE:
            raise DomainError(f"degree {coef.size - 1} exceeds cap {MAX_POLY_DEGREE}")
        object.__setattr__(self, "coefficients", tuple(coef.tolist()))

    @property
    def coef(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)

    @property
    def degree(self) -> int:
        """Degree; -1 stands in for the zero polynomial."""
        c = self.coef
        return -1 if (c.size == 1 and c[0] == 0) else c.size - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == -1

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.coef)

    def __add__(self, other):
        other = _as_poly(other)
        return Polynomial(np.polynomial.polynomial.polyadd(self.coef, other.coef))

    def __sub__(self, other):
        other = _as_poly(other)
        return Polynomial(np.polynomial.polynomial.polysub(self.coef, other.coef))

    def __mul__(self, other):
        if np.isscalar(other):
            return Polynomial(self.coef * complex(other))
        other = _as_poly(other)
        return Polynomial(np.polynomial.polynomial.polymul(self.coef, other.coef))

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial(np.polynomial.polynomial.polyder(self.coef))

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.zeros(0, dtype=complex)
        return np.polynomial.polynomial.polyroots(self.coef)

    def trimmed(self, rel_tol: float = 1e-13) -> "Polynomial":
        """Drop trailing coefficients negligible relative to the largest one."""
        c = self.coef
        scale = np.max(np.abs(c))
        if scale == 0:
            return Polynomial([0])
        keep = np.flatnonzero(np.abs(c) > rel_tol * scale)
        if keep.size == 0:
            return Polynomial([0])
        return Polynomial(c[: keep[-1] + 1])


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if np.isscalar(p):
        return Polynomial([complex(p)])
    return Polynomial(p)


def poly_from_roots(roots) -> Polynomial:
    """Monic polynomial with exactly the given roots (with multiplicity)."""
    roots = np.asarray(list(roots), dtype=complex)
    if roots.size == 0:
        return Polynomial([1.0])
    return Polynomial(np.polynomial.polynomial.polyfromroots(roots))


def poly_divide(num: Polynomial, den: Polynomial, rel_tol: float = 1e-8):
    """Polynomial division; returns (quotient, remainder)."""
    if den.is_zero:
        raise DomainError("division by the zero polynomial")
    q, r = np.polynomial.polynomial.polydiv(num.coef, den.coef)
    return Polynomial(q), Polynomial(r)


def poly_divide_exact(num: Polynomial, den: Polynomial, rel_tol: float = 1e-8) -> Polynomial:
    """Division that is expected to be exact; raises if the remainder is large."""
    q, r = poly_divide(num, den)
    scale = max(np.max(np.abs(num.coef)), 1e-300)
    if not r.is_zero and np.max(np.abs(r.coef)) > rel_tol * scale:
        raise EvaluationError(
            f"inexact polynomial division (relative remainder "
            f"{np.max(np.abs(r.coef)) / scale:.3e})"
        )
    return q.trimmed()


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    """Quotient of two polynomials in coefficient form.

    When the denominator's roots are supplied at construction the
    denominator is evaluated in factored form; expanded coefficients cancel
    catastrophically once poles crowd the evaluation region.
    """

    numerator: Polynomial
    denominator: Polynomial
    den_roots: tuple | None = None

    def __init__(self, numerator, denominator=Polynomial([1.0]), den_roots=None):
        num = _as_poly(numerator)
        den = _as_poly(denominator)
        if den.is_zero:
            raise DomainError("rational function with zero denominator")
        if den_roots is not None:
            den_roots = tuple(complex(r) for r in den_roots)
            if len(den_roots) != max(den.degree, 0):
                raise DomainError("den_roots must list every denominator root")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        object.__setattr__(self, "den_roots", den_roots)

    @cached_property
    def poles(self) -> np.ndarray:
        if self.den_roots is not None:
            return np.asarray(self.den_roots, dtype=complex)
        return self.denominator.roots()

    def _den_values(self, z: np.ndarray) -> np.ndarray:
        if self.den_roots is None:
            return self.denominator(z)
        out = np.full(z.shape, self.denominator.coef[-1], dtype=complex)
        for r in self.den_roots:
            out = out * (z - r)
        return out

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.numerator(z) / self._den_values(z)

    def __mul__(self, other):
        if np.isscalar(other):
            return RationalFunction(self.numerator * other, self.denominator,
                                    self.den_roots)
        if isinstance(other, Polynomial):
            other = RationalFunction(other, Polynomial([1.0]), ())
        roots = None
        if self.den_roots is not None and other.den_roots is not None:
            roots = self.den_roots + other.den_roots
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator, roots)

    __rmul__ = __mul__

    def h2_safe(self, margin: float = 1e-12) -> bool:
        """True when every pole lies strictly outside the closed unit disk."""
        if self.denominator.degree < 1:
            return True
        return bool(np.all(np.abs(self.poles) > 1.0 + margin))

    def simplified(self, tol: float = 1e-12) -> "RationalFunction":
        """Cancel numerator/denominator root pairs that agree within ``tol``."""
        if self.numerator.is_zero:
            return RationalFunction(Polynomial([0.0]), Polynomial([1.0]), ())
        nr = list(self.numerator.roots())
        dr = list(self.poles)
        lead_n = self.numerator.coef[-1]
        lead_d = self.denominator.coef[-1]
        kept_d = []
        for p in dr:
            hit = None
            for i, q in enumerate(nr):
                if abs(p - q) < tol:
                    hit = i
                    break
            if hit is None:
                kept_d.append(p)
            else:
                nr.pop(hit)
        if len(kept_d) == len(dr):
            return self
        num = poly_from_roots(nr) * lead_n
        den = poly_from_roots(kept_d) * lead_d
        return RationalFunction(num, den, tuple(kept_d))
