"""Entropy evaluation: render the volume from every grid viewpoint and pick the best."""

import logging
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from viewpath.entropy.score import EntropySource, viewpoint_score
from viewpath.geometry.quat import Quaternion
from viewpath.geometry.viewsphere import Viewpoint, ViewpointGrid
from viewpath.render.camera import DEFAULT_FOV, Camera, FrameBuffer
from viewpath.render.raymarch import RenderSpec, render_isosurfaces
from viewpath.render.volume import ScalarVolume

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ViewSettings:
    """Image size and field of view shared by every render of a run."""

    width: int = 512
    height: int = 512
    vertical_fov: float = DEFAULT_FOV


@dataclass(frozen=True, eq=False)
class Heatmap:
    """Per-viewpoint scores, ``values[lat_idx, lon_idx]``, at one visualization step."""

    values: np.ndarray
    vis_step: int | None = None

    @property
    def n_lat(self) -> int:
        return self.values.shape[0]

    @property
    def n_lon(self) -> int:
        return self.values.shape[1]


class EvaluationResult(NamedTuple):
    best: Quaternion
    heatmap: Heatmap
    viewpoint: Viewpoint

    @property
    def score(self) -> float:
        return float(self.heatmap.values[self.viewpoint.lat_idx, self.viewpoint.lon_idx])


def render_view(
    vol: ScalarVolume, position, orientation: Quaternion, spec: RenderSpec, view: ViewSettings
) -> FrameBuffer:
    """Render ``vol`` from a camera at ``position`` with ``orientation``."""
    cam = Camera.framing(
        position,
        orientation,
        vol.center,
        vol.bounding_radius,
        view.width,
        view.height,
        view.vertical_fov,
    )
    return render_isosurfaces(vol, cam, spec)


def entropy_evaluation(
    vol: ScalarVolume,
    grid: ViewpointGrid,
    spec: RenderSpec,
    source: EntropySource,
    view: ViewSettings | None = None,
    workers: int = 1,
    vis_step: int | None = None,
    on_view: Callable[[Viewpoint, FrameBuffer], None] | None = None,
) -> EvaluationResult:
    """Score every viewpoint of ``grid`` and return the best one.

    Ties go to the first viewpoint in latitude-major order, whatever order the renders
    finish in. ``on_view`` sees every rendered framebuffer (in grid order).
    """
    if len(grid) == 0:
        raise ValueError("viewpoint grid is empty")
    view = view or ViewSettings()
    started = time.perf_counter()

    def score(vp: Viewpoint) -> tuple[float, FrameBuffer | None]:
        fb = render_view(vol, vp.position, vp.orientation, spec, view)
        return viewpoint_score(fb, source), fb if on_view else None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(score, grid.viewpoints))
    else:
        results = [score(vp) for vp in grid.viewpoints]

    if on_view:
        for vp, (_, fb) in zip(grid.viewpoints, results, strict=True):
            on_view(vp, fb)

    scores = np.array([s for s, _ in results]).reshape(grid.n_lat, grid.n_lon)
    best_idx = int(np.argmax(scores))
    best = grid.viewpoints[best_idx]

    elapsed = time.perf_counter() - started
    logger.debug(
        "evaluated %d viewpoints in %.3fs (%.4fs/image): best lat=%d lon=%d score=%.6f",
        len(grid),
        elapsed,
        elapsed / len(grid),
        best.lat_idx,
        best.lon_idx,
        scores.flat[best_idx],
    )
    return EvaluationResult(best.orientation, Heatmap(scores, vis_step), best)
