"""Diverging color maps (RdBu, PiYG, PuOr).

Each map is the standard 11-class ColorBrewer diverging definition, embedded as control
points evenly spaced over [0, 1] and interpolated piecewise-linearly in sRGB. All three
share the lightness profile of a diverging map: dark ends, a near-white middle.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np


class ColorMapName(str, Enum):
    RDBU = "RdBu"
    PIYG = "PiYG"
    PUOR = "PuOr"


_TABLES = {
    ColorMapName.RDBU: (
        "67001f b2182b d6604d f4a582 fddbc7 f7f7f7 d1e5f0 92c5de 4393c3 2166ac 053061"
    ),
    ColorMapName.PIYG: (
        "8e0152 c51b7d de77ae f1b6da fde0ef f7f7f7 e6f5d0 b8e186 7fbc41 4d9221 276419"
    ),
    ColorMapName.PUOR: (
        "7f3b08 b35806 e08214 fdb863 fee0b6 f7f7f7 d8daeb b2abd2 8073ac 542788 2d004b"
    ),
}


def _hex_to_rgb(code: str) -> tuple[int, int, int]:
    return int(code[0:2], 16), int(code[2:4], 16), int(code[4:6], 16)


@dataclass(frozen=True)
class ColorMap:
    """Control points ``(t, (r, g, b))`` with strictly increasing ``t`` from 0 to 1."""

    name: str
    points: tuple[tuple[float, tuple[int, int, int]], ...]

    def __post_init__(self):
        ts = [t for t, _ in self.points]
        if len(ts) < 2 or ts[0] != 0.0 or ts[-1] != 1.0:
            raise ValueError(f"color map {self.name} must have control points at 0 and 1")
        if any(b <= a for a, b in zip(ts, ts[1:], strict=False)):
            raise ValueError(f"color map {self.name} control points must strictly increase")

    @classmethod
    def named(cls, name: str | ColorMapName) -> "ColorMap":
        key = ColorMapName(name)
        colors = [_hex_to_rgb(c) for c in _TABLES[key].split()]
        n = len(colors) - 1
        return cls(name=key.value, points=tuple((i / n, rgb) for i, rgb in enumerate(colors)))

    def reversed(self) -> "ColorMap":
        return ColorMap(
            name=f"{self.name}_r",
            points=tuple((1.0 - t, rgb) for t, rgb in reversed(self.points)),
        )

    def sample_many(self, t) -> np.ndarray:
        """Float RGB (0..255) at each of ``t``, clamped to [0, 1]."""
        t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
        ts = np.array([p[0] for p in self.points])
        rgb = np.array([p[1] for p in self.points], dtype=float)
        return np.stack([np.interp(t, ts, rgb[:, c]) for c in range(3)], axis=-1)


def colormap_sample(cmap: ColorMap, t: float) -> tuple[int, int, int]:
    """8-bit RGB at ``t`` (clamped to [0, 1])."""
    rgb = np.rint(cmap.sample_many(t))
    return int(rgb[0]), int(rgb[1]), int(rgb[2])
