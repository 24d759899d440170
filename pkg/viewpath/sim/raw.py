"""Raw volume series on disk.

A series is a set of header-less files ``<prefix>_<step:06d>.raw`` holding little-endian
scalars with x varying fastest. Grid dimensions are supplied out of band. Volumes are
mapped onto the unit cube.
"""

import logging
import re
from pathlib import Path

import numpy as np

from viewpath.render.volume import ScalarVolume

logger = logging.getLogger(__name__)

VALUE_TYPES = {"float32": "<f4", "float64": "<f8"}


def raw_path(prefix: str | Path, step: int) -> Path:
    prefix = Path(prefix)
    return prefix.with_name(f"{prefix.name}_{step:06d}.raw")


def write_raw_volume(vol: ScalarVolume, path: Path, value_type: str = "float32") -> None:
    """Write ``vol`` as little-endian scalars, x fastest."""
    dtype = np.dtype(VALUE_TYPES[value_type])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(np.asarray(vol.values, dtype=dtype).tobytes(order="F"))


def read_raw_volume(path: Path, dims, value_type: str = "float32") -> ScalarVolume:
    """Read one raw volume. Raises ``ValueError`` when the byte count does not match."""
    dtype = np.dtype(VALUE_TYPES[value_type])
    data = path.read_bytes()
    expected = int(np.prod(dims)) * dtype.itemsize
    if len(data) != expected:
        raise ValueError(
            f"{path}: size mismatch, expected {expected} bytes for {tuple(dims)} "
            f"{value_type}, got {len(data)}"
        )
    values = np.frombuffer(data, dtype=dtype).reshape(tuple(dims), order="F")
    return ScalarVolume.unit_cube(values.astype(float))


def count_series(prefix: str | Path) -> int:
    """Number of consecutive steps present for ``prefix``, starting at step 0."""
    prefix = Path(prefix)
    pattern = re.compile(re.escape(prefix.name) + r"_(\d{6})\.raw$")
    steps = {
        int(m.group(1))
        for p in prefix.parent.glob(f"{prefix.name}_*.raw")
        if (m := pattern.match(p.name))
    }
    count = 0
    while count in steps:
        count += 1
    return count


def load_raw_series(
    prefix: str | Path, dims, value_type: str = "float32", count: int | None = None
):
    """Yield the volumes of a raw series in step order.

    With ``count`` omitted, the series runs over the consecutive steps found on disk.
    Raises ``FileNotFoundError`` naming the step index when a file is missing.
    """
    if value_type not in VALUE_TYPES:
        raise ValueError(f"unsupported value type {value_type!r}; use one of {list(VALUE_TYPES)}")
    if count is None:
        count = count_series(prefix)
        logger.debug("found %d raw volumes for %s", count, prefix)
    for step in range(count):
        path = raw_path(prefix, step)
        if not path.exists():
            raise FileNotFoundError(f"raw volume for step {step} not found: {path}")
        yield read_raw_volume(path, dims, value_type)
