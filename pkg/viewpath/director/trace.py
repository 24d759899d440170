"""Offline best-viewpoint trace: the argmax viewpoint at every visualization step.

This is the ``n_e = 1`` oracle the accumulative-distance metric compares camera paths
against.
"""

from collections.abc import Iterable

from viewpath.director.director import Evaluator
from viewpath.director.evaluation import EvaluationResult
from viewpath.director.schedule import Schedule
from viewpath.render.volume import ScalarVolume


def best_viewpoint_trace(
    volumes: Iterable[ScalarVolume], schedule: Schedule, evaluate: Evaluator
) -> list[EvaluationResult]:
    """Evaluate the grid at each visualization step of ``volumes`` (one per sim step)."""
    trace = []
    for t, vol in enumerate(volumes):
        if t >= schedule.t_end:
            break
        if schedule.is_vis_step(t):
            trace.append(evaluate(vol, schedule.vis_index(t)))
    return trace
