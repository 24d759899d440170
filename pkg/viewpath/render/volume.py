"""Regular-grid scalar volumes and trilinear sampling.

Values are stored as a float64 array indexed ``[ix, iy, iz]``. Node ``(i, j, k)`` sits at
``origin + (i, j, k) * spacing``, so the volume spans ``origin .. origin + (dims - 1) *
spacing`` on each axis.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ScalarVolume:
    """One time step of a scalar field on a regular grid."""

    values: np.ndarray
    spacing: tuple[float, float, float] = (1.0, 1.0, 1.0)
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 3 or min(values.shape) < 2:
            raise ValueError(f"volume needs at least 2 nodes per axis, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("volume values must be finite")
        if min(self.spacing) <= 0:
            raise ValueError(f"volume spacing must be positive, got {self.spacing}")
        object.__setattr__(self, "values", values)

    @classmethod
    def unit_cube(cls, values) -> "ScalarVolume":
        """Volume whose nodes span [0, 1] on every axis."""
        values = np.asarray(values, dtype=float)
        spacing = tuple(1.0 / (n - 1) for n in values.shape)
        return cls(values=values, spacing=spacing)

    @property
    def dims(self) -> tuple[int, int, int]:
        return tuple(self.values.shape)

    @property
    def lower(self) -> np.ndarray:
        return np.asarray(self.origin, dtype=float)

    @property
    def upper(self) -> np.ndarray:
        return self.lower + (np.asarray(self.dims) - 1) * np.asarray(self.spacing)

    @property
    def center(self) -> np.ndarray:
        return (self.lower + self.upper) / 2.0

    @property
    def bounding_radius(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower) / 2.0)

    @property
    def value_range(self) -> tuple[float, float]:
        return float(self.values.min()), float(self.values.max())

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p >= self.lower) and np.all(p <= self.upper))


def sample_points(vol: ScalarVolume, points: np.ndarray) -> np.ndarray:
    """Trilinear interpolation at an ``(N, 3)`` array of points.

    Points are clamped to the volume bounds; callers that need a bounds error use
    :func:`sample_trilinear`.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    dims = np.asarray(vol.dims)
    g = (points - vol.lower) / np.asarray(vol.spacing)
    g = np.clip(g, 0.0, dims - 1)
    i0 = np.minimum(np.floor(g).astype(np.int64), dims - 2)
    f = g - i0
    x0, y0, z0 = i0[:, 0], i0[:, 1], i0[:, 2]
    fx, fy, fz = f[:, 0], f[:, 1], f[:, 2]
    v = vol.values

    c00 = v[x0, y0, z0] * (1 - fx) + v[x0 + 1, y0, z0] * fx
    c10 = v[x0, y0 + 1, z0] * (1 - fx) + v[x0 + 1, y0 + 1, z0] * fx
    c01 = v[x0, y0, z0 + 1] * (1 - fx) + v[x0 + 1, y0, z0 + 1] * fx
    c11 = v[x0, y0 + 1, z0 + 1] * (1 - fx) + v[x0 + 1, y0 + 1, z0 + 1] * fx
    c0 = c00 * (1 - fy) + c10 * fy
    c1 = c01 * (1 - fy) + c11 * fy
    return c0 * (1 - fz) + c1 * fz


def sample_trilinear(vol: ScalarVolume, p) -> float:
    """Trilinear value at a single point. Raises ``ValueError`` outside the volume."""
    if not vol.contains(p):
        raise ValueError(f"sample point {tuple(p)} outside volume bounds")
    return float(sample_points(vol, np.asarray(p, dtype=float)[None, :])[0])


def gradient_points(vol: ScalarVolume, points: np.ndarray) -> np.ndarray:
    """Central-difference gradients (step = half a cell) at ``(N, 3)`` points.

    Near the boundary the offset sample is clamped into the volume and the difference is
    divided by the distance actually spanned, giving a one-sided difference.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    lower, upper = vol.lower, vol.upper
    grad = np.empty_like(points)
    for axis in range(3):
        h = vol.spacing[axis] / 2.0
        ahead = points.copy()
        behind = points.copy()
        ahead[:, axis] = np.minimum(points[:, axis] + h, upper[axis])
        behind[:, axis] = np.maximum(points[:, axis] - h, lower[axis])
        span = ahead[:, axis] - behind[:, axis]
        diff = sample_points(vol, ahead) - sample_points(vol, behind)
        grad[:, axis] = np.divide(diff, span, out=np.zeros_like(diff), where=span > 0)
    return grad


def gradient(vol: ScalarVolume, p) -> np.ndarray:
    """Gradient of the trilinear field at a single point."""
    return gradient_points(vol, np.asarray(p, dtype=float)[None, :])[0]
