"""Clark measures of inner functions.

Exact atomic construction for finite Blaschke products (phase tracking plus
Newton polish), the explicit discrete measure of the single-atom exponential
inner function, the defining Poisson identity as a numeric residual, and the
absolute-continuity multiplier criterion for shared-atom pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError
from .inner import AtomicSingular, FiniteBlaschke, InnerFunction


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite (or truncated) positive atomic measure on the unit circle."""

    atoms: tuple                # ((xi, weight), ...), xi on the circle
    tail_bound: float = 0.0     # certified mass outside the listed atoms

    def __post_init__(self):
        seen = []
        for xi, w in self.atoms:
            if w <= 0:
                raise DataError("atom weights must be positive")
            if any(abs(xi - s) < 1e-12 for s in seen):
                raise DataError(f"duplicate atom at {xi}")
            seen.append(xi)
        if self.tail_bound < 0:
            raise DataError("tail bound must be nonnegative")

    @property
    def total_mass(self) -> float:
        return float(sum(w for _, w in self.atoms))

    def poisson(self, zs) -> np.ndarray:
        """Poisson integral of the listed atoms at interior points."""
        zs = np.asarray(zs, dtype=complex)
        out = np.zeros(zs.shape, dtype=float)
        for xi, w in self.atoms:
            out += w * (1.0 - np.abs(zs) ** 2) / np.abs(xi - zs) ** 2
        return out

    def to_dict(self) -> dict:
        return {
            "atoms": [{"angle_turns": float(np.angle(xi) / (2 * np.pi) % 1.0),
                       "weight": float(w)} for xi, w in self.atoms],
            "tail_bound": self.tail_bound,
        }

    @staticmethod
    def from_dict(data: dict) -> "AtomicMeasure":
        atoms = tuple(
            (np.exp(2j * np.pi * float(a["angle_turns"])), float(a["weight"]))
            for a in data["atoms"])
        return AtomicMeasure(atoms=atoms, tail_bound=float(data.get("tail_bound", 0.0)))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _finite_blaschke_atoms(u: FiniteBlaschke) -> AtomicMeasure:
    # track the boundary phase of u; it increases by 2*pi*degree around the
    # circle, so u(xi) = 1 has exactly `degree` solutions
    n = u.degree
    slack = sum((1.0 + abs(a)) / (1.0 - abs(a)) for a in u.zeros)
    m = max(4096, 16 * int(np.ceil(slack)))
    theta = 2 * np.pi * np.arange(m + 1) / m
    xi = np.exp(1j * theta)
    phase = np.unwrap(np.angle(u.values_on(xi)))
    total = phase[-1] - phase[0]
    if abs(total - 2 * np.pi * n) > 1e-6:
        raise DomainError("phase tracking failed to certify the winding number")

    k0 = np.ceil(phase[0] / (2 * np.pi) - 1e-12)
    targets = 2 * np.pi * (k0 + np.arange(n))
    atoms = []
    for t in targets:
        j = int(np.searchsorted(phase, t))
        j = min(max(j, 1), m)
        th = 0.5 * (theta[j - 1] + theta[j])
        # Newton on the phase residual; d(arg u)/d(theta) = Re(z u'/u) > 0
        for _ in range(80):
            z = np.exp(1j * th)
            resid = float(np.angle(u.values_on(np.array([z]))[0]))
            deriv = float(np.real(z * u.log_derivative_on(np.array([z]))[0]))
            step = resid / deriv
            th -= step
            if abs(step) < 1e-16:
                break
        z = complex(np.exp(1j * th))
        weight = 1.0 / float(np.real(z * u.log_derivative_on(np.array([z]))[0]))
        atoms.append((z, weight))
    atoms.sort(key=lambda aw: float(np.angle(aw[0]) % (2 * np.pi)))
    return AtomicMeasure(atoms=tuple(atoms), tail_bound=0.0)


def exp_atom_clark_atoms(weight: float, n_range: int) -> AtomicMeasure:
    """Clark measure of exp(w (z+1)/(z-1)), truncated to |n| <= n_range.

    Atoms z_n = (2 pi i n - w)/(2 pi i n + w) carry weight 2w/(4 pi^2 n^2 + w^2);
    the dropped mass is below w / (pi^2 n_range).
    """
    if weight <= 0:
        raise DomainError("atom weight must be positive")
    atoms = []
    for k in range(-n_range, n_range + 1):
        z = (2j * np.pi * k - weight) / (2j * np.pi * k + weight)
        c = 2.0 * weight / (4.0 * np.pi ** 2 * k ** 2 + weight ** 2)
        atoms.append((complex(z), float(c)))
    tail = weight / (np.pi ** 2 * n_range)
    return AtomicMeasure(atoms=tuple(atoms), tail_bound=float(tail))


def clark_measure(u: InnerFunction, n_range: int = 200) -> AtomicMeasure:
    """Clark measure of ``u`` (the one whose Poisson integral matches
    (1-|u|^2)/|1-u|^2); exact for finite Blaschke products, truncated with a
    certified tail for the single-atom exponential family."""
    if isinstance(u, FiniteBlaschke):
        if u.degree < 1:
            raise DomainError("degree must be at least 1")
        return _finite_blaschke_atoms(u)
    if isinstance(u, AtomicSingular):
        if len(u.atoms) == 1 and abs(u.atoms[0][0] - 1.0) < 1e-12:
            return exp_atom_clark_atoms(u.atoms[0][1], n_range)
        raise NotImplementedError(
            "clark_measure supports AtomicSingular only for the single atom "
            "at 1; got " + repr(u.describe()))
    raise NotImplementedError(
        f"clark_measure not implemented for variant {type(u).__name__}")


# ---------------------------------------------------------------------------
# Poisson identity residual
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoissonCheck:
    max_residual: float
    tolerance: float
    within_tolerance: bool
    n_samples: int
    n_skipped: int

    def to_dict(self) -> dict:
        return {"max_residual": self.max_residual, "tolerance": self.tolerance,
                "within_tolerance": self.within_tolerance,
                "n_samples": self.n_samples, "n_skipped": self.n_skipped}


def poisson_identity_residual(u: InnerFunction, mu: AtomicMeasure, samples,
                              base_tol: float = 1e-10) -> PoissonCheck:
    """Residual of (1-|u|^2)/|1-u|^2 against the Poisson integral of mu.

    The tolerance at each sample is the base tolerance plus the measure's
    tail bound times the Poisson kernel sup (1+|z|)/(1-|z|).
    """
    zs = np.asarray([complex(z) for z in samples])
    uz = u.values_on(zs)
    skip = np.abs(uz - 1.0) < 1e-12
    kept = ~skip
    lhs = (1.0 - np.abs(uz[kept]) ** 2) / np.abs(1.0 - uz[kept]) ** 2
    rhs = mu.poisson(zs[kept])
    resid = np.abs(lhs - rhs)
    r = np.abs(zs[kept])
    tol = base_tol + mu.tail_bound * (1.0 + r) / (1.0 - r)
    worst = float(np.max(resid)) if resid.size else 0.0
    return PoissonCheck(max_residual=worst,
                        tolerance=float(np.max(tol)) if resid.size else base_tol,
                        within_tolerance=bool(np.all(resid <= tol)),
                        n_samples=int(zs.size), n_skipped=int(np.sum(skip)))


# ---------------------------------------------------------------------------
# absolute-continuity multiplier criterion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbsoluteContinuityReport:
    verdict: str                 # multiplier-candidate | not-absolutely-continuous
    h_sup: float | None
    missing_atoms: tuple
    n_shared: int

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "h_sup": self.h_sup,
                "missing_atoms": [[a.real, a.imag] for a in self.missing_atoms],
                "n_shared": self.n_shared}


def absolute_continuity_multiplier(mu_u: AtomicMeasure, mu_v: AtomicMeasure,
                                   match_tol: float = 1e-9) -> AbsoluteContinuityReport:
    """Atomwise density of mu_u against mu_v and its sup.

    When every atom of mu_u appears in mu_v with a bounded weight ratio, the
    quotient (1 - v)/(1 - u) of the attached inner functions is flagged as a
    multiplier candidate.
    """
    v_atoms = list(mu_v.atoms)
    h_vals = []
    missing = []
    for xi, w in mu_u.atoms:
        hit = None
        for xj, wj in v_atoms:
            if abs(xi - xj) <= match_tol:
                hit = wj
                break
        if hit is None:
            missing.append(xi)
        else:
            if hit <= 0:
                raise DataError(f"zero weight in the dominating measure at {xi}")
            h_vals.append(w / hit)
    if missing:
        return AbsoluteContinuityReport(verdict="not-absolutely-continuous",
                                        h_sup=None, missing_atoms=tuple(missing),
                                        n_shared=len(h_vals))
    return AbsoluteContinuityReport(verdict="multiplier-candidate",
                                    h_sup=float(max(h_vals)) if h_vals else 0.0,
                                    missing_atoms=(), n_shared=len(h_vals))
