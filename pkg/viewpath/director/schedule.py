"""Simulation, visualization and entropy-evaluation time step bookkeeping.

The simulation advances by ``dt``. Every ``n_v``-th simulation step is a visualization
step, and every ``n_e``-th visualization step is also an entropy-evaluation step, so
``dt_v = n_v * dt`` and ``dt_e = n_e * n_v * dt``.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Schedule:
    dt: float = 1.0
    n_v: int = 1
    n_e: int = 30
    t_end: int = 300

    def __post_init__(self):
        if self.n_v < 1:
            raise ValueError(f"n_v must be >= 1, got {self.n_v}")
        if self.n_e < 1:
            raise ValueError(f"n_e must be >= 1, got {self.n_e}")
        if self.t_end < 1:
            raise ValueError(f"t_end must be >= 1, got {self.t_end}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")

    @property
    def dt_v(self) -> float:
        return self.n_v * self.dt

    @property
    def dt_e(self) -> float:
        return self.n_e * self.n_v * self.dt

    @property
    def vis_steps(self) -> int:
        """Number of visualization steps in ``0 .. t_end - 1``."""
        return math.ceil(self.t_end / self.n_v)

    def is_vis_step(self, t: int) -> bool:
        return t % self.n_v == 0

    def vis_index(self, t: int) -> int:
        return t // self.n_v

    def is_entropy_step(self, t: int) -> bool:
        return self.is_vis_step(t) and self.vis_index(t) % self.n_e == 0
