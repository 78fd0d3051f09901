"""Initial-condition constructors: seven-circles bump data, sinusoidal
profiles, seeded random fields, and snapshot files."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .snapshot import read_snapshot, require_grid
from .spectral import GridSpec, RealField, forward_transform, inverse_transform


@dataclass(frozen=True)
class CircleSpec:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")


# canonical seven-circle configuration (centers, radii)
DEFAULT_CIRCLES = (
    CircleSpec((-np.pi / 2, -np.pi / 2), np.pi / 5),
    CircleSpec((-3 * np.pi / 4, -np.pi / 4), 2 * np.pi / 15),
    CircleSpec((-np.pi / 2, np.pi / 4), 2 * np.pi / 15),
    CircleSpec((0.0, -3 * np.pi / 4), np.pi / 10),
    CircleSpec((np.pi / 2, -3 * np.pi / 4), np.pi / 10),
    CircleSpec((0.0, 0.0), np.pi / 4),
    CircleSpec((np.pi / 2, np.pi / 2), np.pi / 4),
)


def bump(s, sharpness: float):
    """f0(s) = 2 e^{-sharpness/s^2} for s < 0, else 0."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    neg = s < 0
    out[neg] = 2.0 * np.exp(-sharpness / s[neg] ** 2)
    return out


def seven_circles(grid: GridSpec, circles: Optional[Sequence[CircleSpec]] = None,
                  sharpness: float = 0.01) -> RealField:
    """u0 = -1 + sum_i f0(dist((x,y), center_i) - r_i).

    Distances are plain Euclidean (no torus wrap): the canonical circles sit
    strictly inside [-pi, pi)^2, so wrapping never matters for them.  The sum
    runs in sorted circle order so any permutation of the input list yields a
    bit-identical field.
    """
    if circles is None:
        circles = DEFAULT_CIRCLES
    x = grid.coordinates
    xx = x[:, None]
    yy = x[None, :]
    u = -np.ones((grid.samples_per_axis, grid.samples_per_axis))
    ordered = sorted(circles, key=lambda c: (c.center[0], c.center[1], c.radius))
    for c in ordered:
        dist = np.sqrt((xx - c.center[0]) ** 2 + (yy - c.center[1]) ** 2)
        u += bump(dist - c.radius, sharpness)
    return RealField(grid, u)


def sinusoidal(grid: GridSpec, amplitude: float) -> RealField:
    """a sin(x) sin(y) sampled on the grid."""
    x = grid.coordinates
    return RealField(grid, amplitude * np.sin(x)[:, None] * np.sin(x)[None, :])


def random_uniform(grid: GridSpec, seed: int) -> RealField:
    """I.i.d. uniform samples in [-1, 1], projected into X_N; deterministic per seed."""
    rng = np.random.default_rng(seed)
    raw = rng.uniform(-1.0, 1.0, (grid.samples_per_axis, grid.samples_per_axis))
    return inverse_transform(forward_transform(RealField(grid, raw)))


def from_file(path, grid: Optional[GridSpec] = None) -> RealField:
    """Load a snapshot file; with a grid given, mismatches raise GridMismatch."""
    field, _time = read_snapshot(path)
    if grid is not None:
        require_grid(field, grid, path)
    return field
