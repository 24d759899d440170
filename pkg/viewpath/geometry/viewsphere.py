"""Candidate viewpoints evenly spread over a latitude/longitude sphere.

Viewpoints sit at polar angles ``theta_i = pi (i + 1) / (n_lat + 1)`` (poles excluded) and
azimuths ``phi_j = 2 pi j / n_lon``, ordered latitude-major. That ordering is the
tie-break order for every argmax over the grid.

Cameras look down their local -z axis with +y up, so a viewpoint's orientation rotates
(0, 0, -1) onto the direction from its position to the sphere center.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from viewpath.geometry.quat import Quaternion

logger = logging.getLogger(__name__)

UP_HINT = (0.0, 0.0, 1.0)
FALLBACK_UP = (0.0, 1.0, 0.0)

# |forward x up| below this means the up hint is unusable.
_PARALLEL_EPS = 1e-6


@dataclass(frozen=True)
class Viewpoint:
    """One candidate camera on the grid sphere."""

    lat_idx: int
    lon_idx: int
    position: tuple[float, float, float]
    orientation: Quaternion


@dataclass(frozen=True)
class ViewpointGrid:
    """The ``n_lat x n_lon`` sphere of candidate cameras around ``center``."""

    n_lat: int
    n_lon: int
    radius: float
    center: tuple[float, float, float]
    viewpoints: tuple[Viewpoint, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.viewpoints)

    def __iter__(self):
        return iter(self.viewpoints)

    def at(self, lat_idx: int, lon_idx: int) -> Viewpoint:
        return self.viewpoints[lat_idx * self.n_lon + lon_idx]

    def position_of(self, orientation: Quaternion) -> tuple[float, float, float]:
        """Camera position on this sphere for a camera with ``orientation``."""
        back = orientation.rotate((0.0, 0.0, 1.0))
        p = np.asarray(self.center) + self.radius * back
        return (float(p[0]), float(p[1]), float(p[2]))


def build_grid(
    n_lat: int,
    n_lon: int,
    radius: float,
    center=(0.0, 0.0, 0.0),
    up_hint=UP_HINT,
) -> ViewpointGrid:
    """Build the latitude-major viewpoint grid.

    Raises ``ValueError`` for non-positive counts or radius.
    """
    if n_lat < 1 or n_lon < 1:
        raise ValueError(f"viewpoint grid needs n_lat, n_lon >= 1 (got {n_lat}x{n_lon})")
    if not radius > 0:
        raise ValueError(f"viewpoint sphere radius must be positive (got {radius})")

    c = np.asarray(center, dtype=float)
    viewpoints = []
    for i in range(n_lat):
        theta = math.pi * (i + 1) / (n_lat + 1)
        for j in range(n_lon):
            phi = 2.0 * math.pi * j / n_lon
            offset = np.array(
                [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
            )
            p = c + radius * offset
            position = (float(p[0]), float(p[1]), float(p[2]))
            viewpoints.append(Viewpoint(i, j, position, look_at(position, c, up_hint)))

    return ViewpointGrid(
        n_lat=n_lat,
        n_lon=n_lon,
        radius=float(radius),
        center=(float(c[0]), float(c[1]), float(c[2])),
        viewpoints=tuple(viewpoints),
    )


def look_at(position, center, up_hint=UP_HINT) -> Quaternion:
    """Orientation of a camera at ``position`` aimed at ``center``.

    The camera up axis is ``up_hint`` projected orthogonal to the view direction; when
    the two are (nearly) parallel the secondary axis (0, 1, 0) is used instead.
    """
    p = np.asarray(position, dtype=float)
    forward = np.asarray(center, dtype=float) - p
    dist = np.linalg.norm(forward)
    if dist == 0.0:
        raise ValueError("camera position coincides with the look-at target")
    forward /= dist

    right = np.cross(forward, np.asarray(up_hint, dtype=float))
    if np.linalg.norm(right) < _PARALLEL_EPS:
        logger.debug("up hint parallel to view direction at %s, using fallback up", position)
        right = np.cross(forward, np.asarray(FALLBACK_UP, dtype=float))
        if np.linalg.norm(right) < _PARALLEL_EPS:
            right = np.cross(forward, np.array([1.0, 0.0, 0.0]))
    right /= np.linalg.norm(right)
    up = np.cross(right, forward)

    # Columns are the camera's x, y, z axes in world space.
    basis = np.column_stack([right, up, -forward])
    return Quaternion.from_matrix(basis)


def arc_length(p1, p2, center, radius: float) -> float:
    """Great-circle distance between two points on the sphere around ``center``."""
    c = np.asarray(center, dtype=float)
    a = np.asarray(p1, dtype=float) - c
    b = np.asarray(p2, dtype=float) - c
    # atan2 form is exact for identical points and stable near 0 and pi.
    cross = np.linalg.norm(np.cross(a, b))
    return float(radius * math.atan2(cross, float(np.dot(a, b))))


def geodesic(v1: Viewpoint, v2: Viewpoint, grid: ViewpointGrid) -> float:
    """Arc length between two viewpoints of ``grid``."""
    return arc_length(v1.position, v2.position, grid.center, grid.radius)
