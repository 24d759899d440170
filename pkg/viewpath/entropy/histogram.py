"""256-bin histograms of framebuffer depth and lightness, and their Shannon entropy.

Background pixels (depth exactly 1.0) carry no information and are excluded from
both histograms.
"""

from dataclasses import dataclass

import numpy as np

from viewpath.entropy.lightness import lightness_array

N_BINS = 256


@dataclass(frozen=True)
class Histogram256:
    """Counts of foreground pixels per bin; ``total`` is their sum."""

    bins: np.ndarray
    total: int

    @classmethod
    def from_indices(cls, indices: np.ndarray) -> "Histogram256":
        bins = np.bincount(indices.ravel(), minlength=N_BINS).astype(np.int64)
        return cls(bins=bins, total=int(indices.size))


def _bin_index(values: np.ndarray, scale: float) -> np.ndarray:
    return np.minimum(np.floor(values / scale * N_BINS).astype(np.int64), N_BINS - 1)


def depth_histogram(fb) -> Histogram256:
    """Bin normalized depth of the foreground pixels: ``min(floor(d * 256), 255)``."""
    depth = np.asarray(fb.depth)
    fg = depth[depth != 1.0]
    return Histogram256.from_indices(_bin_index(fg, 1.0))


def lightness_histogram(fb) -> Histogram256:
    """Bin CIE L* of the foreground pixels: ``min(floor(L / 100 * 256), 255)``."""
    mask = np.asarray(fb.depth) != 1.0
    lightness = lightness_array(np.asarray(fb.rgb)[mask])
    return Histogram256.from_indices(_bin_index(lightness, 100.0))


def shannon(h: Histogram256) -> float:
    """Entropy in bits; empty bins contribute nothing and an empty histogram scores 0."""
    if h.total == 0:
        return 0.0
    counts = h.bins[h.bins > 0]
    p = counts / h.total
    return float(max(0.0, -np.sum(p * np.log2(p))))
