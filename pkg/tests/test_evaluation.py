"""Entropy evaluation over real renders of small volumes."""

import numpy as np
import pytest

from viewpath.director.evaluation import ViewSettings, entropy_evaluation, render_view
from viewpath.entropy.score import EntropySource, viewpoint_score
from viewpath.geometry.viewsphere import build_grid
from viewpath.render.colormap import ColorMap
from viewpath.render.raymarch import RenderSpec
from viewpath.render.volume import ScalarVolume

VIEW = ViewSettings(16, 16)


def _two_blob_volume(n: int = 12) -> ScalarVolume:
    """One large and one small blob off the cube's symmetry axes."""
    axes = [np.linspace(0.0, 1.0, n)] * 3
    x, y, z = np.meshgrid(*axes, indexing="ij")
    a = np.exp(-((x - 0.3) ** 2 + (y - 0.65) ** 2 + (z - 0.55) ** 2) / 0.03)
    b = 0.6 * np.exp(-((x - 0.75) ** 2 + (y - 0.3) ** 2 + (z - 0.35) ** 2) / 0.01)
    return ScalarVolume.unit_cube(a + b)


@pytest.fixture(scope="module")
def volume():
    return _two_blob_volume()


@pytest.fixture(scope="module")
def grid(volume):
    return build_grid(5, 10, radius=2.0, center=tuple(volume.center))


@pytest.fixture(scope="module")
def spec(volume):
    return RenderSpec.for_volume(volume, ColorMap.named("RdBu"))


class TestEntropyEvaluation:
    @pytest.mark.parametrize("source", list(EntropySource))
    def test_best_is_exhaustive_argmax(self, volume, grid, spec, source):
        result = entropy_evaluation(volume, grid, spec, source, VIEW)

        scores = [
            viewpoint_score(render_view(volume, vp.position, vp.orientation, spec, VIEW), source)
            for vp in grid
        ]
        assert len(set(scores)) > 1
        best = max(scores)
        first = next(i for i, s in enumerate(scores) if s == best)

        assert result.heatmap.values.ravel().tolist() == scores
        assert result.viewpoint is grid.viewpoints[first]
        assert result.best == grid.viewpoints[first].orientation
        assert result.score == best

    def test_all_background_tie_goes_to_first_viewpoint(self, grid):
        empty = ScalarVolume.unit_cube(np.zeros((4, 4, 4)))
        spec = RenderSpec.for_volume(empty, ColorMap.named("RdBu"))
        result = entropy_evaluation(empty, grid, spec, EntropySource.DEPTH_AND_LIGHTNESS, VIEW)
        assert not result.heatmap.values.any()
        assert (result.viewpoint.lat_idx, result.viewpoint.lon_idx) == (0, 0)

    def test_on_view_sees_grid_order(self, volume, grid, spec):
        seen = []
        entropy_evaluation(
            volume, grid, spec, "depth", VIEW, workers=2, on_view=lambda vp, fb: seen.append(vp)
        )
        assert seen == list(grid.viewpoints)
