"""Run metrics: average emitted-frame entropy and accumulative path distance."""

from pathlib import Path

import numpy as np

from viewpath.director.director import Frame
from viewpath.entropy.score import EntropySource, viewpoint_score
from viewpath.geometry.viewsphere import Viewpoint, ViewpointGrid, arc_length
from viewpath.output.image import read_frame


def accumulative_distance(
    frames: list[Frame], trace: list[Viewpoint], grid: ViewpointGrid
) -> np.ndarray:
    """Running sum over visualization steps of the arc length between the camera and
    that step's best viewpoint."""
    if len(frames) != len(trace):
        raise ValueError(
            f"frame log covers {len(frames)} visualization steps, trace covers {len(trace)}"
        )
    steps = [
        arc_length(frame.position, best.position, grid.center, grid.radius)
        for frame, best in zip(frames, trace, strict=True)
    ]
    return np.cumsum(np.asarray(steps, dtype=float))


def average_entropy(frames: list[Frame]) -> float:
    """Mean score of the emitted frames."""
    if not frames:
        raise ValueError("cannot average entropy over an empty frame log")
    missing = [f.index for f in frames if f.entropy is None]
    if missing:
        raise ValueError(f"frames without an entropy score (metrics mode off?): {missing[:5]}")
    return float(np.mean([f.entropy for f in frames]))


def rescore_frames(image_paths: list[Path], source: EntropySource) -> list[float]:
    """Score frames again from their PPM images and depth companions."""
    return [viewpoint_score(read_frame(path), source) for path in image_paths]
