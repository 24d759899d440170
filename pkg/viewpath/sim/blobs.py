"""Analytic toy simulation: Gaussian blobs orbiting the center of the unit cube.

Each blob circles the vertical axis through the cube center while bobbing up and down,
so the most informative viewpoint migrates around the sphere over time. The field at step
``t`` is a pure function of the configuration and ``t``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from viewpath.render.volume import ScalarVolume


@dataclass(frozen=True)
class Blob:
    """One Gaussian feature and its quasi-periodic orbit (unit-cube coordinates)."""

    amplitude: float = 1.0
    width: float = 0.08
    orbit_radius: float = 0.2
    angular_speed: float = 1.0  # radians per unit simulation time
    phase: float = 0.0
    height: float = 0.0  # vertical oscillation amplitude
    vertical_speed: float = 0.0
    vertical_phase: float = 0.0

    def center(self, time: float) -> np.ndarray:
        a = self.phase + self.angular_speed * time
        return np.array(
            [
                0.5 + self.orbit_radius * math.cos(a),
                0.5 + self.orbit_radius * math.sin(a),
                0.5 + self.height * math.sin(self.vertical_phase + self.vertical_speed * time),
            ]
        )

    def speed(self) -> float:
        """Upper bound on the center's speed."""
        return math.hypot(self.orbit_radius * self.angular_speed, self.height * self.vertical_speed)


@dataclass(frozen=True)
class BlobSimConfig:
    """Grid size, blobs, step count and time step of the toy simulation."""

    dims: tuple[int, int, int] = (64, 64, 64)
    blobs: tuple[Blob, ...] = field(default_factory=tuple)
    steps: int = 300
    dt: float = 0.02
    seed: int = 0

    def __post_init__(self):
        if min(self.dims) < 2:
            raise ValueError(f"blob sim needs at least 2 nodes per axis, got {self.dims}")
        if self.steps < 1:
            raise ValueError(f"blob sim needs at least one step, got {self.steps}")
        if not self.blobs:
            object.__setattr__(self, "blobs", random_blobs(self.seed))

    @property
    def amplitude_sum(self) -> float:
        return sum(b.amplitude for b in self.blobs)


def random_blobs(seed: int, count: int = 3) -> tuple[Blob, ...]:
    """Seeded blob set; the same seed always gives the same blobs."""
    rng = np.random.default_rng(seed)
    blobs = []
    for _ in range(count):
        blobs.append(
            Blob(
                amplitude=float(rng.uniform(0.6, 1.0)),
                width=float(rng.uniform(0.06, 0.12)),
                orbit_radius=float(rng.uniform(0.1, 0.25)),
                angular_speed=float(rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0])),
                phase=float(rng.uniform(0.0, 2.0 * math.pi)),
                height=float(rng.uniform(0.0, 0.15)),
                vertical_speed=float(rng.uniform(0.3, 1.2)),
                vertical_phase=float(rng.uniform(0.0, 2.0 * math.pi)),
            )
        )
    return tuple(blobs)


def _grid_axes(dims):
    return [np.linspace(0.0, 1.0, n) for n in dims]


def blob_sim_step(cfg: BlobSimConfig, t: int) -> ScalarVolume:
    """Field at simulation step ``t``: the sum of the blobs' Gaussians."""
    if not 0 <= t < cfg.steps:
        raise ValueError(f"step {t} outside simulation range 0..{cfg.steps - 1}")
    xs, ys, zs = _grid_axes(cfg.dims)
    time = t * cfg.dt
    values = np.zeros(cfg.dims)
    for blob in cfg.blobs:
        c = blob.center(time)
        gx = np.exp(-((xs - c[0]) ** 2) / (2.0 * blob.width**2))
        gy = np.exp(-((ys - c[1]) ** 2) / (2.0 * blob.width**2))
        gz = np.exp(-((zs - c[2]) ** 2) / (2.0 * blob.width**2))
        values += blob.amplitude * np.einsum("i,j,k->ijk", gx, gy, gz)
    return ScalarVolume.unit_cube(values)


def blob_sim_series(cfg: BlobSimConfig):
    """Yield every step of the simulation in order."""
    for t in range(cfg.steps):
        yield blob_sim_step(cfg, t)
