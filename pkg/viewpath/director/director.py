"""The in-situ director: picks knot viewpoints and emits one camera frame per
visualization step along a SLERP or SQUAD path through them.

Flow per simulation step ``t`` (see :class:`Director.on_timestep`):

- visualization steps buffer their volume;
- the first step is evaluated and its best viewpoint pushed twice (``q0 = q1`` padding);
- every later entropy step pushes one new knot;
- once four knots are queued, the segment between the middle two is emitted over the
  buffered volumes and the window slides by one knot.

Emission therefore lags one segment behind evaluation, because SQUAD needs the knot
after the segment's end. :meth:`Director.finalize` drains the last segment with
``q_{n+1} = q_n`` padding and renders any remaining volumes from the last knot.
"""

import logging
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import Enum

from viewpath.director.evaluation import EvaluationResult
from viewpath.director.schedule import Schedule
from viewpath.geometry.quat import (
    Quaternion,
    ensure_shortest,
    rotation_angle,
    slerp_arc,
    squad,
    squad_control,
)
from viewpath.geometry.viewsphere import Viewpoint, ViewpointGrid
from viewpath.render.volume import ScalarVolume

logger = logging.getLogger(__name__)

Evaluator = Callable[[ScalarVolume, int], EvaluationResult]

# Interpolated frames this close to a knot (rotation angle, radians) take its exact pose.
KNOT_SNAP_ANGLE = 1e-6


class Interpolation(str, Enum):
    SLERP = "slerp"
    SQUAD = "squad"


@dataclass(frozen=True)
class Knot:
    """A selected viewpoint; ``orientation`` is aligned to the previous knot's hemisphere."""

    viewpoint: Viewpoint
    orientation: Quaternion
    vis_step: int
    score: float


@dataclass(eq=False)
class Frame:
    """One emitted camera frame.

    ``viewpoint`` is set when the frame sits on a knot (within :data:`KNOT_SNAP_ANGLE`);
    orientation and position are then the knot's own. The director's frame log keeps
    frames without their volume.
    """

    index: int
    vis_step: int
    orientation: Quaternion
    position: tuple[float, float, float]
    volume: ScalarVolume | None = None
    viewpoint: Viewpoint | None = None
    entropy: float | None = None


def segment_curve(
    q1: Quaternion, q2: Quaternion, q3: Quaternion, q4: Quaternion, method: Interpolation
) -> Callable[[float], Quaternion]:
    """Camera orientation along the ``q2 -> q3`` segment for ``s`` in [0, 1].

    The window is aligned once, anchored on ``q2``: ``q1`` and ``q3`` to ``q2``, ``q4``
    to ``q3``, and each SQUAD control point to its knot. The curve starts exactly at
    ``q2`` and never changes hemisphere inside the segment.
    """
    q1 = ensure_shortest(q2, q1)
    q3 = ensure_shortest(q2, q3)
    q4 = ensure_shortest(q3, q4)
    if Interpolation(method) is Interpolation.SLERP:
        return lambda s: slerp_arc(q2, q3, s)
    a2 = squad_control(q1, q2, q3)
    a3 = squad_control(q2, q3, q4)
    return lambda s: squad(q2, q3, a2, a3, s)


class Director:
    """Sequential state machine driving knot selection and frame emission.

    Holds the knot queue, the buffered visualization volumes and the emitted frame log.
    With ``metrics`` enabled every visualization step is evaluated and its best viewpoint
    appended to :attr:`trace`.
    """

    def __init__(
        self,
        schedule: Schedule,
        grid: ViewpointGrid,
        evaluate: Evaluator,
        method: Interpolation = Interpolation.SQUAD,
        metrics: bool = False,
    ):
        self.schedule = schedule
        self.grid = grid
        self.evaluate = evaluate
        self.method = Interpolation(method)
        self.metrics = metrics

        self.knots: deque[Knot] = deque()
        self.volumes: deque[tuple[int, ScalarVolume]] = deque()
        self.frames: list[Frame] = []
        self.evaluations: list[EvaluationResult] = []
        self.trace: list[Viewpoint] = []

        self._next_t = 0
        self._finalized = False

    def on_timestep(self, t: int, vol: ScalarVolume) -> list[Frame]:
        """Advance to simulation step ``t`` and return any frames emitted."""
        if self._finalized:
            raise ValueError("director already finalized")
        if t != self._next_t:
            raise ValueError(f"non-monotonic timestep {t}, expected {self._next_t}")
        if t >= self.schedule.t_end:
            raise ValueError(f"timestep {t} beyond t_end={self.schedule.t_end}")
        self._next_t += 1

        if not self.schedule.is_vis_step(t):
            return []
        k = self.schedule.vis_index(t)
        self.volumes.append((k, vol))

        entropy_step = self.schedule.is_entropy_step(t)
        result = self.evaluate(vol, k) if entropy_step or self.metrics else None
        if self.metrics:
            self.trace.append(result.viewpoint)
        if not entropy_step:
            return []

        self.evaluations.append(result)
        self._push_knot(result, k)
        if k == 0:
            self._push_knot(result, k)

        if len(self.knots) == 4:
            frames = self._emit_segment(tuple(self.knots))
            self.knots.popleft()
            return frames
        return []

    def finalize(self) -> list[Frame]:
        """Drain the remaining knots and buffered volumes after the last step."""
        if self._finalized:
            return []
        self._finalized = True
        frames: list[Frame] = []
        if len(self.knots) >= 3:
            q1, q2, q3 = self.knots[0], self.knots[1], self.knots[2]
            frames += self._emit_segment((q1, q2, q3, q3))
            self.knots.popleft()
        if self.volumes:
            last = self.knots[-1]
            logger.debug("rendering %d tail volumes from the last knot", len(self.volumes))
            while self.volumes:
                k, vol = self.volumes.popleft()
                frames.append(
                    self._emit(k, vol, last.orientation, last.viewpoint.position, last.viewpoint)
                )
        return frames

    def _push_knot(self, result: EvaluationResult, k: int) -> None:
        orientation = result.best
        if self.knots:
            orientation = ensure_shortest(self.knots[-1].orientation, orientation)
        self.knots.append(Knot(result.viewpoint, orientation, k, result.score))

    def _emit_segment(self, window: tuple[Knot, Knot, Knot, Knot]) -> list[Frame]:
        start, end = window[1], window[2]
        curve = segment_curve(*(knot.orientation for knot in window), self.method)
        n_e = self.schedule.n_e
        logger.info("segment vis %d -> %d (%s)", start.vis_step, end.vis_step, self.method.value)
        frames = []
        for j in range(n_e):
            k, vol = self.volumes.popleft()
            if j == 0:
                knot = start
            else:
                q = curve(j / n_e)
                knot = _coincident_knot(q, start, end)
            if knot is not None:
                frames.append(
                    self._emit(k, vol, knot.orientation, knot.viewpoint.position, knot.viewpoint)
                )
            else:
                frames.append(self._emit(k, vol, q, self.grid.position_of(q)))
        return frames

    def record_entropy(self, frame: Frame, entropy: float) -> None:
        """Attach the rendered frame's score to both ``frame`` and the frame log."""
        frame.entropy = entropy
        self.frames[frame.index].entropy = entropy

    def _emit(self, k, vol, orientation, position, viewpoint=None) -> Frame:
        frame = Frame(len(self.frames), k, orientation, position, vol, viewpoint)
        self.frames.append(replace(frame, volume=None))
        return frame


def _coincident_knot(q: Quaternion, *knots: Knot) -> Knot | None:
    for knot in knots:
        if rotation_angle(q, knot.orientation) <= KNOT_SNAP_ANGLE:
            return knot
    return None
