"""Parsers for the compact option formats used on the command line and in config files.

- sizes: ``25x50``, ``512x512``
- dims: ``64x64x64``, ``64,64,64`` or a single ``64`` for a cube
- value lists: ``0.2,0.4,0.6``
- key=value config files
"""

from pathlib import Path


def parse_size(text: str) -> tuple[int, int]:
    """Parse ``AxB`` into two positive integers."""
    parts = text.lower().replace(" ", "").split("x")
    if len(parts) != 2:
        raise ValueError(f"expected <a>x<b>, got {text!r}")
    a, b = (int(p) for p in parts)
    if a < 1 or b < 1:
        raise ValueError(f"both sizes must be positive, got {text!r}")
    return a, b


def parse_dims(text: str) -> tuple[int, int, int]:
    """Parse grid dimensions: ``NxNxN``, ``N,N,N`` or ``N``."""
    parts = text.lower().replace(" ", "").replace(",", "x").split("x")
    if len(parts) == 1:
        parts = parts * 3
    if len(parts) != 3:
        raise ValueError(f"expected three dimensions, got {text!r}")
    dims = tuple(int(p) for p in parts)
    if min(dims) < 2:
        raise ValueError(f"each dimension needs at least 2 nodes, got {text!r}")
    return dims


def parse_floats(text: str) -> tuple[float, ...]:
    """Parse a comma-separated list of numbers."""
    values = tuple(float(p) for p in text.split(",") if p.strip())
    if not values:
        raise ValueError(f"expected a comma-separated list of numbers, got {text!r}")
    return values


def parse_list(text: str) -> list[str]:
    """Split a comma-separated option value, dropping empty items."""
    return [p.strip() for p in text.split(",") if p.strip()]


def read_key_values(path: Path) -> dict[str, str]:
    """Read ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    values = {}
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{number}: expected key=value, got {line.strip()!r}")
        key, value = stripped.split("=", 1)
        values[key.strip().lstrip("-")] = value.strip()
    return values
