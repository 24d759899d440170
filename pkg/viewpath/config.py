"""Run configuration and its validation."""

import math
from dataclasses import dataclass
from pathlib import Path

from viewpath.director.director import Interpolation
from viewpath.director.schedule import Schedule
from viewpath.entropy.score import EntropySource
from viewpath.render.colormap import ColorMapName
from viewpath.sim.raw import VALUE_TYPES
from viewpath.utils.parsing import parse_dims, parse_floats, parse_size

BLOB_SOURCE = "blob"


class ConfigError(ValueError):
    """An invalid run option; ``field`` is the option name as given on the command line."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


@dataclass(frozen=True)
class RunConfig:
    """Every parameter of one run. Defaults are the reference configuration."""

    source: str = BLOB_SOURCE
    dims: tuple[int, int, int] = (64, 64, 64)
    value_type: str = "float32"
    steps: int | None = None
    dt: float = 0.02
    entropy: EntropySource = EntropySource.DEPTH_AND_LIGHTNESS
    colormap: ColorMapName = ColorMapName.RDBU
    grid: tuple[int, int] = (25, 50)
    nv: int = 1
    ne: int = 30
    interp: Interpolation = Interpolation.SQUAD
    image: tuple[int, int] = (512, 512)
    fov: float = 50.0
    radius_factor: float = 2.5
    isovalues: tuple[float, ...] | None = None
    out: Path = Path("out")
    seed: int = 0
    metrics: bool = False
    all_views: bool = False
    fps: int = 30
    workers: int = 1

    def __post_init__(self):
        for name, enum in (
            ("entropy", EntropySource),
            ("colormap", ColorMapName),
            ("interp", Interpolation),
        ):
            try:
                object.__setattr__(self, name, enum(getattr(self, name)))
            except ValueError:
                choices = ", ".join(e.value for e in enum)
                raise ConfigError(
                    f"--{name}", f"{getattr(self, name)!r} is not one of {choices}"
                ) from None
        object.__setattr__(self, "out", Path(self.out))

        if self.nv < 1:
            raise ConfigError("--nv", f"must be >= 1, got {self.nv}")
        if self.ne < 1:
            raise ConfigError("--ne", f"must be >= 1, got {self.ne}")
        if min(self.grid) < 1:
            raise ConfigError("--grid", f"needs at least 1x1 viewpoints, got {self.grid}")
        if min(self.image) < 1:
            raise ConfigError("--image", f"size must be positive, got {self.image}")
        if min(self.dims) < 2:
            raise ConfigError("--dims", f"needs at least 2 nodes per axis, got {self.dims}")
        if self.steps is not None and self.steps < 1:
            raise ConfigError("--steps", f"must be >= 1, got {self.steps}")
        if not self.dt > 0:
            raise ConfigError("--dt", f"must be positive, got {self.dt}")
        if not 0 < self.fov < 180:
            raise ConfigError("--fov", f"must be between 0 and 180 degrees, got {self.fov}")
        if not self.radius_factor > 1:
            raise ConfigError(
                "--radius-factor", f"cameras must sit outside the volume, got {self.radius_factor}"
            )
        if self.isovalues is not None and not self.isovalues:
            raise ConfigError("--isovalues", "needs at least one value")
        if self.value_type not in VALUE_TYPES:
            raise ConfigError("--value-type", f"must be one of {', '.join(VALUE_TYPES)}")
        if self.fps < 1:
            raise ConfigError("--fps", f"must be >= 1, got {self.fps}")
        if self.workers < 1:
            raise ConfigError("--workers", f"must be >= 1, got {self.workers}")

    @property
    def is_blob_sim(self) -> bool:
        return self.source == BLOB_SOURCE

    @property
    def fov_radians(self) -> float:
        return math.radians(self.fov)

    def schedule(self, t_end: int) -> Schedule:
        return Schedule(dt=self.dt, n_v=self.nv, n_e=self.ne, t_end=t_end)


_PARSERS = {
    "dims": parse_dims,
    "grid": parse_size,
    "image": parse_size,
    "isovalues": parse_floats,
}


def option_flag(name: str) -> str:
    """Command-line spelling of a ``RunConfig`` field: ``radius_factor`` -> ``--radius-factor``."""
    return "--" + name.replace("_", "-")


def config_from_options(options: dict) -> RunConfig:
    """Build a ``RunConfig`` from raw option values, parsing the compact string formats."""
    values = {k: v for k, v in options.items() if v is not None}
    for name, parse in _PARSERS.items():
        value = values.get(name)
        if isinstance(value, str):
            try:
                values[name] = parse(value)
            except ValueError as exc:
                raise ConfigError(option_flag(name), str(exc)) from None
    unknown = set(values) - set(RunConfig.__dataclass_fields__)
    if unknown:
        raise ConfigError(option_flag(sorted(unknown)[0]), "unknown option")
    return RunConfig(**values)
