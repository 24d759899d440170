"""Tests for raw volume series on disk."""

import numpy as np
import pytest

from viewpath.render.volume import ScalarVolume
from viewpath.sim.raw import (
    count_series,
    load_raw_series,
    raw_path,
    read_raw_volume,
    write_raw_volume,
)

DIMS = (4, 3, 2)


@pytest.fixture
def volume():
    return ScalarVolume.unit_cube(np.arange(24, dtype=float).reshape(DIMS))


def _write_series(prefix, count, value_type="float32"):
    for step in range(count):
        values = np.full(DIMS, float(step))
        write_raw_volume(ScalarVolume.unit_cube(values), raw_path(prefix, step), value_type)


class TestRawFiles:
    def test_path_format(self, tmp_path):
        assert raw_path(tmp_path / "sim", 12) == tmp_path / "sim_000012.raw"

    def test_x_varies_fastest(self, tmp_path):
        values = np.zeros(DIMS)
        values[1, 0, 0] = 1.0
        path = tmp_path / "one.raw"
        write_raw_volume(ScalarVolume.unit_cube(values), path)
        data = np.frombuffer(path.read_bytes(), dtype="<f4")
        assert data[:2].tolist() == [0.0, 1.0]

    @pytest.mark.parametrize("value_type", ["float32", "float64"])
    def test_read_back(self, tmp_path, volume, value_type):
        path = tmp_path / "vol.raw"
        write_raw_volume(volume, path, value_type)
        assert path.stat().st_size == 24 * (4 if value_type == "float32" else 8)
        assert np.array_equal(read_raw_volume(path, DIMS, value_type).values, volume.values)

    def test_size_mismatch(self, tmp_path, volume):
        path = tmp_path / "vol.raw"
        write_raw_volume(volume, path)
        with pytest.raises(ValueError, match="expected 192 bytes"):
            read_raw_volume(path, DIMS, "float64")


class TestSeries:
    def test_count_stops_at_gap(self, tmp_path):
        _write_series(tmp_path / "run", 3)
        write_raw_volume(ScalarVolume.unit_cube(np.zeros(DIMS)), raw_path(tmp_path / "run", 5))
        assert count_series(tmp_path / "run") == 3

    def test_count_missing_prefix(self, tmp_path):
        assert count_series(tmp_path / "nothing") == 0

    def test_load_in_order(self, tmp_path):
        _write_series(tmp_path / "run", 4)
        steps = [float(v.values[0, 0, 0]) for v in load_raw_series(tmp_path / "run", DIMS)]
        assert steps == [0.0, 1.0, 2.0, 3.0]

    def test_missing_step_named(self, tmp_path):
        _write_series(tmp_path / "run", 2)
        series = load_raw_series(tmp_path / "run", DIMS, count=4)
        next(series)
        next(series)
        with pytest.raises(FileNotFoundError, match="step 2"):
            next(series)

    def test_unknown_value_type(self, tmp_path):
        with pytest.raises(ValueError, match="unsupported value type"):
            next(load_raw_series(tmp_path / "run", DIMS, "int16"))
