"""Heatmap persistence: CSV values and a colored preview image.

CSV rows are latitudes (top = first latitude row), columns are longitudes, values have
six significant digits.
"""

from pathlib import Path

import numpy as np

from viewpath.director.evaluation import Heatmap
from viewpath.output.image import encode_ppm
from viewpath.render.colormap import ColorMap


def write_heatmap(hm: Heatmap, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(f"{v:.6g}" for v in row) for row in hm.values]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_heatmap(path: Path) -> Heatmap:
    rows = [
        [float(v) for v in line.split(",")]
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    return Heatmap(values=np.array(rows))


def write_heatmap_image(hm: Heatmap, path: Path, cell: int = 8) -> None:
    """PPM preview: low scores blue, high scores red (reversed RdBu), ``cell`` px per view."""
    values = hm.values
    lo, hi = float(values.min()), float(values.max())
    t = np.zeros_like(values) if hi <= lo else (values - lo) / (hi - lo)
    rgb = np.rint(ColorMap.named("RdBu").reversed().sample_many(t)).astype(np.uint8)
    rgb = np.repeat(np.repeat(rgb, cell, axis=0), cell, axis=1)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_ppm(rgb))
