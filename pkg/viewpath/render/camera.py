"""Pinhole cameras and the RGB + depth framebuffers they produce."""

import math
from dataclasses import dataclass

import numpy as np

from viewpath.geometry.quat import Quaternion

DEFAULT_FOV = math.radians(50.0)


@dataclass(frozen=True)
class Camera:
    """A perspective camera looking down its local -z axis, +y up."""

    position: tuple[float, float, float]
    orientation: Quaternion
    vertical_fov: float = DEFAULT_FOV
    near: float = 0.1
    far: float = 10.0
    width: int = 512
    height: int = 512

    def __post_init__(self):
        if not 0 < self.near < self.far:
            raise ValueError(f"camera needs 0 < near < far (got {self.near}, {self.far})")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image size must be positive (got {self.width}x{self.height})")
        if abs(self.orientation.norm() - 1.0) > 1e-6:
            raise ValueError(f"camera orientation must be a unit quaternion: {self.orientation}")

    @classmethod
    def framing(
        cls,
        position,
        orientation: Quaternion,
        target,
        bounding_radius: float,
        width: int,
        height: int,
        vertical_fov: float = DEFAULT_FOV,
    ) -> "Camera":
        """Camera whose near/far planes enclose a sphere of ``bounding_radius`` at ``target``."""
        distance = float(np.linalg.norm(np.asarray(position) - np.asarray(target)))
        far = distance + bounding_radius
        near = max(distance - bounding_radius, 1e-3 * far)
        return cls(
            position=tuple(float(c) for c in position),
            orientation=orientation,
            vertical_fov=vertical_fov,
            near=near,
            far=far,
            width=width,
            height=height,
        )

    def ray_directions(self) -> np.ndarray:
        """Unit world-space ray directions through each pixel center, ``(H * W, 3)``.

        Rows run top to bottom, columns left to right.
        """
        tan_half = math.tan(self.vertical_fov / 2.0)
        aspect = self.width / self.height
        xs = ((np.arange(self.width) + 0.5) * 2.0 / self.width - 1.0) * tan_half * aspect
        ys = (1.0 - (np.arange(self.height) + 0.5) * 2.0 / self.height) * tan_half
        gx, gy = np.meshgrid(xs, ys)
        local = np.stack([gx.ravel(), gy.ravel(), -np.ones(gx.size)], axis=1)
        local /= np.linalg.norm(local, axis=1, keepdims=True)
        return self.orientation.rotate(local)

    def depth_of(self, distance):
        """Normalized depth in [0, 1) for hit distances along the ray."""
        d = (np.asarray(distance, dtype=float) - self.near) / (self.far - self.near)
        return np.clip(d, 0.0, np.nextafter(1.0, 0.0))

    def distance_of(self, depth):
        """Inverse of :meth:`depth_of` for depths below 1."""
        return self.near + np.asarray(depth, dtype=float) * (self.far - self.near)


@dataclass(frozen=True, eq=False)
class FrameBuffer:
    """Rendered image: ``rgb`` is ``(H, W, 3)`` uint8, ``depth`` is ``(H, W)`` float64.

    Pixels that hit nothing have depth exactly 1.0.
    """

    rgb: np.ndarray
    depth: np.ndarray

    def __post_init__(self):
        if self.rgb.shape[:2] != self.depth.shape or self.rgb.shape[2:] != (3,):
            raise ValueError(
                f"framebuffer rgb {self.rgb.shape} does not match depth {self.depth.shape}"
            )

    @property
    def width(self) -> int:
        return self.depth.shape[1]

    @property
    def height(self) -> int:
        return self.depth.shape[0]

    @property
    def foreground(self) -> np.ndarray:
        return self.depth != 1.0

    @classmethod
    def blank(cls, width: int, height: int, background=(0, 0, 0)) -> "FrameBuffer":
        rgb = np.empty((height, width, 3), dtype=np.uint8)
        rgb[:] = background
        return cls(rgb=rgb, depth=np.ones((height, width)))
