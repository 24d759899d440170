"""Tests for the diverging color maps."""

import pytest

from viewpath.entropy.lightness import rgb_to_lightness
from viewpath.render.colormap import ColorMap, ColorMapName, colormap_sample


class TestNamedMaps:
    def test_rdbu_endpoints_and_middle(self):
        cmap = ColorMap.named("RdBu")
        assert colormap_sample(cmap, 0.0) == (0x67, 0x00, 0x1F)
        assert colormap_sample(cmap, 0.5) == (0xF7, 0xF7, 0xF7)
        assert colormap_sample(cmap, 1.0) == (0x05, 0x30, 0x61)

    def test_clamps_outside_unit_interval(self):
        cmap = ColorMap.named(ColorMapName.PIYG)
        assert colormap_sample(cmap, -3.0) == colormap_sample(cmap, 0.0)
        assert colormap_sample(cmap, 7.0) == colormap_sample(cmap, 1.0)

    def test_interpolates_between_control_points(self):
        cmap = ColorMap.named("PuOr")
        r0, g0, b0 = colormap_sample(cmap, 0.0)
        r1, g1, b1 = colormap_sample(cmap, 0.1)
        r, g, b = colormap_sample(cmap, 0.05)
        assert min(r0, r1) <= r <= max(r0, r1)
        assert min(g0, g1) <= g <= max(g0, g1)
        assert min(b0, b1) <= b <= max(b0, b1)

    @pytest.mark.parametrize("name", list(ColorMapName))
    def test_diverging_lightness_profile(self, name):
        cmap = ColorMap.named(name)
        middle = rgb_to_lightness(*colormap_sample(cmap, 0.5))
        assert rgb_to_lightness(*colormap_sample(cmap, 0.0)) < middle
        assert rgb_to_lightness(*colormap_sample(cmap, 1.0)) < middle

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            ColorMap.named("viridis")

    def test_reversed(self):
        cmap = ColorMap.named("RdBu")
        rev = cmap.reversed()
        assert rev.name == "RdBu_r"
        assert colormap_sample(rev, 0.0) == colormap_sample(cmap, 1.0)
        assert colormap_sample(rev, 0.3) == colormap_sample(cmap, 0.7)


class TestValidation:
    def test_needs_both_ends(self):
        with pytest.raises(ValueError, match="control points at 0 and 1"):
            ColorMap("bad", ((0.0, (0, 0, 0)), (0.5, (255, 255, 255))))

    def test_needs_increasing_points(self):
        points = ((0.0, (0, 0, 0)), (0.6, (1, 1, 1)), (0.4, (2, 2, 2)), (1.0, (3, 3, 3)))
        with pytest.raises(ValueError, match="strictly increase"):
            ColorMap("bad", points)
