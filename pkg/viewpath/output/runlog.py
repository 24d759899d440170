"""Line-delimited run log.

Frame lines: ``frame,<idx>,<vis_step>,<qw>,<qx>,<qy>,<qz>,<entropy>`` (entropy empty when
not computed). Evaluation lines: ``eval,<vis_step>,<lat_idx>,<lon_idx>,<score>``.
Floats are written with ``repr`` so logs are reproducible byte for byte.
"""

from dataclasses import dataclass, field
from pathlib import Path

from viewpath.director.director import Frame
from viewpath.director.evaluation import EvaluationResult
from viewpath.geometry.quat import Quaternion
from viewpath.geometry.viewsphere import ViewpointGrid


@dataclass
class RunLog:
    frames: list[Frame] = field(default_factory=list)
    evaluations: list[EvaluationResult] = field(default_factory=list)

    def __post_init__(self):
        for i, frame in enumerate(self.frames):
            if frame.index != i:
                raise ValueError(
                    f"frame indices must be contiguous from 0, got {frame.index} at {i}"
                )


def _frame_line(frame: Frame) -> str:
    q = frame.orientation
    entropy = "" if frame.entropy is None else repr(frame.entropy)
    return f"frame,{frame.index},{frame.vis_step},{q.w!r},{q.x!r},{q.y!r},{q.z!r},{entropy}"


def _eval_line(result: EvaluationResult) -> str:
    vp = result.viewpoint
    return f"eval,{result.heatmap.vis_step},{vp.lat_idx},{vp.lon_idx},{result.score!r}"


def write_run_log(log: RunLog, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [_eval_line(r) for r in log.evaluations] + [_frame_line(f) for f in log.frames]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_run_frames(path: Path, grid: ViewpointGrid) -> list[Frame]:
    """Frame records from a run log; positions are recomputed on ``grid``'s sphere."""
    frames = []
    for line in path.read_text(encoding="utf-8").splitlines():
        parts = line.split(",")
        if parts[0] != "frame":
            continue
        q = Quaternion.from_array(parts[3:7])
        frames.append(
            Frame(
                index=int(parts[1]),
                vis_step=int(parts[2]),
                orientation=q,
                position=grid.position_of(q),
                entropy=float(parts[7]) if parts[7] else None,
            )
        )
    return frames
