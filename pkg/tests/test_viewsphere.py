"""Tests for the viewpoint grid and sphere geometry."""

import math

import numpy as np
import pytest

from viewpath.geometry.viewsphere import arc_length, build_grid, geodesic, look_at

CENTER = (0.5, 0.5, 0.5)


@pytest.fixture
def grid():
    return build_grid(3, 6, radius=2.0, center=CENTER)


def _forward(q):
    return q.rotate((0.0, 0.0, -1.0))


def _up(q):
    return q.rotate((0.0, 1.0, 0.0))


class TestBuildGrid:
    def test_size_and_order(self, grid):
        assert len(grid) == 18
        for k, vp in enumerate(grid):
            assert (vp.lat_idx, vp.lon_idx) == (k // 6, k % 6)
        assert grid.at(2, 3) is grid.viewpoints[15]

    def test_positions_on_sphere(self, grid):
        for vp in grid:
            dist = np.linalg.norm(np.subtract(vp.position, CENTER))
            assert dist == pytest.approx(2.0)

    def test_latitudes_exclude_poles(self):
        g = build_grid(1, 4, radius=1.0)
        for vp in g:
            assert vp.position[2] == pytest.approx(0.0, abs=1e-12)

    def test_first_longitude_on_x_axis(self):
        g = build_grid(1, 4, radius=1.0)
        np.testing.assert_allclose(g.at(0, 0).position, (1.0, 0.0, 0.0), atol=1e-12)
        np.testing.assert_allclose(g.at(0, 1).position, (0.0, 1.0, 0.0), atol=1e-12)

    def test_cameras_look_at_center(self, grid):
        for vp in grid:
            expected = np.subtract(CENTER, vp.position) / 2.0
            np.testing.assert_allclose(_forward(vp.orientation), expected, atol=1e-9)

    def test_cameras_keep_z_up(self, grid):
        for vp in grid:
            up = _up(vp.orientation)
            assert abs(np.dot(up, _forward(vp.orientation))) < 1e-9
            assert up[2] > 0.0

    def test_orientation_recovers_position(self, grid):
        for vp in grid:
            np.testing.assert_allclose(grid.position_of(vp.orientation), vp.position, atol=1e-9)

    @pytest.mark.parametrize("n_lat,n_lon,radius", [(0, 4, 1.0), (3, 0, 1.0), (3, 4, 0.0)])
    def test_invalid_arguments(self, n_lat, n_lon, radius):
        with pytest.raises(ValueError):
            build_grid(n_lat, n_lon, radius)


class TestLookAt:
    def test_fallback_up_when_parallel(self):
        q = look_at((0.0, 0.0, 2.0), (0.0, 0.0, 0.0))
        np.testing.assert_allclose(_forward(q), (0.0, 0.0, -1.0), atol=1e-12)
        np.testing.assert_allclose(_up(q), (0.0, 1.0, 0.0), atol=1e-12)

    def test_coincident_points_raise(self):
        with pytest.raises(ValueError):
            look_at((1.0, 1.0, 1.0), (1.0, 1.0, 1.0))

    def test_forward_and_up_for_every_viewpoint(self):
        g = build_grid(25, 50, radius=3.0, center=CENTER)
        for vp in g:
            expected = np.subtract(CENTER, vp.position) / 3.0
            forward = _forward(look_at(vp.position, CENTER))
            np.testing.assert_allclose(forward, expected, atol=1e-9)
            np.testing.assert_allclose(_forward(vp.orientation), expected, atol=1e-9)
            assert abs(np.dot(_up(vp.orientation), forward)) < 1e-9


class TestGeodesic:
    def test_identical_viewpoints(self, grid):
        vp = grid.at(1, 2)
        assert geodesic(vp, vp, grid) == 0.0

    def test_antipodal(self):
        g = build_grid(1, 2, radius=3.0)
        assert geodesic(g.at(0, 0), g.at(0, 1), g) == pytest.approx(3.0 * math.pi)

    def test_symmetric(self, grid):
        a, b = grid.at(0, 1), grid.at(2, 4)
        assert geodesic(a, b, grid) == pytest.approx(geodesic(b, a, grid))

    def test_neighbouring_longitudes(self):
        g = build_grid(1, 8, radius=1.0)
        assert geodesic(g.at(0, 0), g.at(0, 1), g) == pytest.approx(math.pi / 4)

    def test_arc_length_scales_with_radius(self):
        p1, p2 = (2.0, 0.0, 0.0), (0.0, 2.0, 0.0)
        assert arc_length(p1, p2, (0.0, 0.0, 0.0), 2.0) == pytest.approx(math.pi)

    def test_triangle_inequality(self):
        g = build_grid(15, 30, radius=2.0, center=CENTER)
        rng = np.random.default_rng(17)
        for a, b, c in rng.integers(0, len(g), size=(500, 3)):
            va, vb, vc = g.viewpoints[a], g.viewpoints[b], g.viewpoints[c]
            assert geodesic(va, vc, g) <= geodesic(va, vb, g) + geodesic(vb, vc, g) + 1e-9
