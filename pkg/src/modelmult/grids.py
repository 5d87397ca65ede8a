"""Deterministic sampling grids for sup-estimates over the disk and the line."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError


def sweep_workers() -> int:
    """Parallelism cap for grid sweeps; MODELSPACE_THREADS, default 1."""
    raw = os.environ.get("MODELSPACE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"MODELSPACE_THREADS must be an integer >= 1, got {raw!r}")
    if n < 1:
        raise DomainError(f"MODELSPACE_THREADS must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class DiskGrid:
    """Concentric circles plus dyadic points along designated rays.

    Points are produced in a fixed order (circles by radius, then angle;
    thereafter each ray's points by radius), so sweeps over a grid are
    reproducible bit for bit.
    """

    radii: tuple = field(default=())
    n_angles: int = 256
    rays: tuple = field(default=(1.0 + 0j,))

    def __init__(self, radii, n_angles=256, rays=(1.0 + 0j,)):
        radii = tuple(float(r) for r in radii)
        if any(not (0.0 < r < 1.0) for r in radii):
            raise DomainError("disk grid radii must lie in (0, 1)")
        if n_angles < 1:
            raise DomainError("need at least one angle")
        dirs = []
        for d in rays:
            d = complex(d)
            if d == 0:
                raise DomainError("ray direction must be nonzero")
            dirs.append(d / abs(d))
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "n_angles", int(n_angles))
        object.__setattr__(self, "rays", tuple(dirs))

    @cached_property
    def circle_points(self) -> np.ndarray:
        angles = np.exp(2j * np.pi * np.arange(self.n_angles) / self.n_angles)
        return np.concatenate([r * angles for r in self.radii]) if self.radii else np.zeros(0, complex)

    def ray_points(self, direction) -> np.ndarray:
        return np.asarray(self.radii, dtype=complex) * complex(direction)

    @cached_property
    def points(self) -> np.ndarray:
        parts = [self.circle_points]
        parts += [self.ray_points(d) for d in self.rays]
        return np.concatenate(parts)

    def spec(self) -> dict:
        return {
            "radii": list(self.radii),
            "n_angles": self.n_angles,
            "rays": [[d.real, d.imag] for d in self.rays],
        }


def default_disk_grid(k_max: int = 12, n_angles: int = 256,
                      rays=(1.0 + 0j,)) -> DiskGrid:
    """Circles at r_k = 1 - 2^-k, k = 1..k_max, the workhorse sweep grid."""
    radii = [1.0 - 2.0 ** (-k) for k in range(1, k_max + 1)]
    return DiskGrid(radii, n_angles=n_angles, rays=rays)


@dataclass(frozen=True)
class LineGrid:
    """Deterministic real sample set for sup-estimates over the line."""

    xs: tuple

    def __init__(self, xs):
        object.__setattr__(self, "xs", tuple(float(x) for x in xs))

    @cached_property
    def points(self) -> np.ndarray:
        return np.asarray(self.xs, dtype=float)

    def spec(self) -> dict:
        return {"n_points": len(self.xs), "min": min(self.xs), "max": max(self.xs)}


def symmetric_line_grid(half_width: float, n_points: int) -> LineGrid:
    if n_points < 2:
        raise DomainError("need at least two points")
    return LineGrid(np.linspace(-half_width, half_width, n_points))
