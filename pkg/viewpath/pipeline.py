"""End-to-end runs: simulation source -> director -> frames, heatmaps, logs and metrics.

Output layout of a run directory::

    frames/frame_<idx:06d>.ppm          one per visualization step
    frames/frame_<idx:06d>.depth.npy    metrics mode only
    heatmaps/heatmap_<vis:06d>.csv      one per entropy evaluation (+ .ppm preview)
    views/step_<vis:06d>/...            --all-views only
    run.log                             frame and evaluation records
    manifest.txt                        fps + ordered frame paths for the encoder
    distance.csv                        metrics mode: accumulative distance per step
    summary.txt                         key=value run summary
"""

import csv
import itertools
import logging
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from viewpath.config import RunConfig
from viewpath.director.director import Director, Frame
from viewpath.director.evaluation import (
    EvaluationResult,
    ViewSettings,
    entropy_evaluation,
    render_view,
)
from viewpath.director.trace import best_viewpoint_trace
from viewpath.entropy.score import viewpoint_score
from viewpath.geometry.viewsphere import Viewpoint, ViewpointGrid, build_grid
from viewpath.output.heatmap import write_heatmap, write_heatmap_image
from viewpath.output.image import write_depth, write_image
from viewpath.output.manifest import write_manifest
from viewpath.output.metrics import accumulative_distance, average_entropy
from viewpath.output.runlog import RunLog, write_run_log
from viewpath.render.colormap import ColorMap
from viewpath.render.raymarch import RenderSpec
from viewpath.render.volume import ScalarVolume
from viewpath.sim.blobs import BlobSimConfig, blob_sim_series
from viewpath.sim.raw import count_series, load_raw_series

logger = logging.getLogger(__name__)

DEFAULT_BLOB_STEPS = 300
SWEEP_AXES = ("entropy", "colormap", "grid", "ne", "interp")

StepCallback = Callable[[int, int], None]


@dataclass
class RunResult:
    """What a run produced, in memory; everything here is also on disk under ``out``."""

    out: Path
    grid: ViewpointGrid
    frames: list[Frame]
    evaluations: list[EvaluationResult]
    frame_paths: list[Path]
    trace: list[Viewpoint] = field(default_factory=list)
    average_entropy: float | None = None
    distance: np.ndarray | None = None
    evaluation_seconds: float = 0.0

    @property
    def final_distance(self) -> float | None:
        if self.distance is None or not len(self.distance):
            return None
        return float(self.distance[-1])


@dataclass
class Scene:
    """Volume stream plus everything derived from its first step."""

    volumes: Iterator[ScalarVolume]
    t_end: int
    grid: ViewpointGrid
    spec: RenderSpec
    view: ViewSettings


def open_source(config: RunConfig) -> tuple[Iterator[ScalarVolume], int]:
    """Volume stream and total simulation steps for ``config.source``."""
    if config.is_blob_sim:
        steps = config.steps or DEFAULT_BLOB_STEPS
        sim = BlobSimConfig(dims=config.dims, steps=steps, dt=config.dt, seed=config.seed)
        return blob_sim_series(sim), steps
    steps = config.steps or count_series(config.source)
    if steps == 0:
        raise FileNotFoundError(f"no raw volumes found for prefix {config.source}")
    return load_raw_series(config.source, config.dims, config.value_type, steps), steps


def open_scene(config: RunConfig) -> Scene:
    volumes, t_end = open_source(config)
    first = next(volumes)
    grid = build_grid(
        config.grid[0],
        config.grid[1],
        radius=config.radius_factor * first.bounding_radius,
        center=first.center,
    )
    spec = RenderSpec.for_volume(first, ColorMap.named(config.colormap), config.isovalues)
    view = ViewSettings(config.image[0], config.image[1], config.fov_radians)
    return Scene(itertools.chain([first], volumes), t_end, grid, spec, view)


class _Evaluator:
    """Entropy evaluation bound to a scene, timing every call."""

    def __init__(self, config: RunConfig, scene: Scene, views_dir: Path | None = None):
        self.config = config
        self.scene = scene
        self.views_dir = views_dir
        self.seconds = 0.0

    def __call__(self, vol: ScalarVolume, vis_step: int) -> EvaluationResult:
        on_view = None
        if self.views_dir is not None and vis_step % self.config.ne == 0:
            step_dir = self.views_dir / f"step_{vis_step:06d}"

            def on_view(vp, fb):
                write_image(fb, step_dir / f"lat{vp.lat_idx:03d}_lon{vp.lon_idx:03d}.ppm")

        started = time.perf_counter()
        result = entropy_evaluation(
            vol,
            self.scene.grid,
            self.scene.spec,
            self.config.entropy,
            self.scene.view,
            workers=self.config.workers,
            vis_step=vis_step,
            on_view=on_view,
        )
        self.seconds += time.perf_counter() - started
        return result


def run(config: RunConfig, on_step: StepCallback | None = None) -> RunResult:
    """Execute the director over every simulation step and write all artifacts."""
    scene = open_scene(config)
    schedule = config.schedule(scene.t_end)
    out = config.out
    frames_dir = out / "frames"
    frames_dir.mkdir(parents=True, exist_ok=True)

    evaluate = _Evaluator(config, scene, out / "views" if config.all_views else None)
    director = Director(schedule, scene.grid, evaluate, config.interp, metrics=config.metrics)
    frame_paths: list[Path] = []

    def emit(frames: list[Frame]) -> None:
        for frame in frames:
            fb = render_view(
                frame.volume, frame.position, frame.orientation, scene.spec, scene.view
            )
            path = frames_dir / f"frame_{frame.index:06d}.ppm"
            write_image(fb, path)
            if config.metrics:
                director.record_entropy(frame, viewpoint_score(fb, config.entropy))
                write_depth(fb, path)
            frame_paths.append(path)

    for t, vol in enumerate(scene.volumes):
        if t >= scene.t_end:
            break
        emit(director.on_timestep(t, vol))
        if on_step:
            on_step(t + 1, scene.t_end)
    emit(director.finalize())

    for result in director.evaluations:
        name = f"heatmap_{result.heatmap.vis_step:06d}"
        write_heatmap(result.heatmap, out / "heatmaps" / f"{name}.csv")
        write_heatmap_image(result.heatmap, out / "heatmaps" / f"{name}.ppm")
    write_run_log(RunLog(director.frames, director.evaluations), out / "run.log")
    write_manifest(frame_paths, config.fps, out / "manifest.txt")

    result = RunResult(
        out=out,
        grid=scene.grid,
        frames=director.frames,
        evaluations=director.evaluations,
        frame_paths=frame_paths,
        trace=director.trace,
        evaluation_seconds=evaluate.seconds,
    )
    if config.metrics:
        result.average_entropy = average_entropy(director.frames)
        result.distance = accumulative_distance(director.frames, director.trace, scene.grid)
        _write_distance(result.distance, out / "distance.csv")
    _write_summary(result, out / "summary.txt")
    return result


def trace(config: RunConfig, on_step: StepCallback | None = None) -> list[EvaluationResult]:
    """Best viewpoint at every visualization step, written to ``trace.csv``."""
    scene = open_scene(config)
    schedule = config.schedule(scene.t_end)
    evaluate = _Evaluator(config, scene)

    def volumes():
        for t, vol in enumerate(scene.volumes):
            yield vol
            if on_step:
                on_step(t + 1, scene.t_end)

    results = best_viewpoint_trace(volumes(), schedule, evaluate)
    config.out.mkdir(parents=True, exist_ok=True)
    with open(config.out / "trace.csv", "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["vis_step", "lat_idx", "lon_idx", "score"])
        for r in results:
            vp = r.viewpoint
            writer.writerow([r.heatmap.vis_step, vp.lat_idx, vp.lon_idx, repr(r.score)])
    return results


@dataclass(frozen=True)
class CellSummary:
    """Outcome of one sweep cell; ``error`` is set when the cell failed."""

    index: int
    settings: dict
    average_entropy: float | None = None
    final_distance: float | None = None
    error: str | None = None


def sweep_cells(base: RunConfig, matrix: dict[str, list]) -> list[RunConfig]:
    """Cross product of ``matrix`` axes applied to ``base``; axes left out keep base values.

    Every cell runs in metrics mode in its own ``cell_<n>`` directory under ``base.out``.
    """
    unknown = set(matrix) - set(SWEEP_AXES)
    if unknown:
        raise ValueError(f"unknown sweep axes: {sorted(unknown)}")
    axes = [(name, matrix.get(name) or [getattr(base, name)]) for name in SWEEP_AXES]
    cells = []
    for i, combo in enumerate(itertools.product(*(values for _, values in axes))):
        settings = dict(zip((name for name, _ in axes), combo, strict=True))
        cells.append(replace(base, **settings, metrics=True, out=base.out / f"cell_{i:03d}"))
    return cells


def sweep(
    base: RunConfig,
    matrix: dict[str, list],
    on_cell: Callable[[int, int, RunConfig], None] | None = None,
) -> list[CellSummary]:
    """Run every cell of the parameter matrix; a failing cell is recorded, not raised."""
    cells = sweep_cells(base, matrix)
    summaries = []
    for i, cell in enumerate(cells):
        if on_cell:
            on_cell(i, len(cells), cell)
        settings = {name: getattr(cell, name) for name in SWEEP_AXES}
        try:
            result = run(cell)
        except Exception as exc:  # one bad cell must not abort the sweep
            logger.warning("sweep cell %d failed: %s", i, exc)
            summaries.append(CellSummary(i, settings, error=f"{type(exc).__name__}: {exc}"))
            continue
        summaries.append(
            CellSummary(i, settings, result.average_entropy, result.final_distance)
        )
    _write_sweep_summary(summaries, base.out / "sweep.csv")
    return summaries


def format_setting(value) -> str:
    if isinstance(value, tuple):
        return "x".join(str(v) for v in value)
    return str(getattr(value, "value", value))


def _write_sweep_summary(summaries: list[CellSummary], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["cell", *SWEEP_AXES, "average_entropy", "final_distance", "error"])
        for s in summaries:
            writer.writerow(
                [
                    s.index,
                    *(format_setting(s.settings[name]) for name in SWEEP_AXES),
                    "" if s.average_entropy is None else repr(s.average_entropy),
                    "" if s.final_distance is None else repr(s.final_distance),
                    s.error or "",
                ]
            )


def _write_distance(distance: np.ndarray, path: Path) -> None:
    lines = ["vis_step,accumulative_distance"]
    lines += [f"{k},{d!r}" for k, d in enumerate(distance.tolist())]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_summary(result: RunResult, path: Path) -> None:
    lines = [
        f"frames={len(result.frames)}",
        f"evaluations={len(result.evaluations)}",
        f"viewpoints={len(result.grid)}",
    ]
    if result.average_entropy is not None:
        lines.append(f"average_entropy={result.average_entropy!r}")
    if result.final_distance is not None:
        lines.append(f"final_distance={result.final_distance!r}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
