"""Binary PPM (P6) frame images and ``.npy`` depth companions.

PPM is the frame contract: ``P6\\n<w> <h>\\n255\\n`` followed by RGB bytes, rows top to
bottom. The depth companion stores the float64 depth buffer so a frame can be re-scored
from disk exactly.
"""

import re
from pathlib import Path

import numpy as np

from viewpath.render.camera import FrameBuffer

_HEADER_RE = re.compile(rb"P6\s+(\d+)\s+(\d+)\s+(\d+)\s")


def encode_ppm(rgb: np.ndarray) -> bytes:
    height, width = rgb.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(rgb, dtype=np.uint8).tobytes()


def write_image(fb: FrameBuffer, path: Path) -> None:
    """Write the framebuffer's colors as a binary PPM."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_ppm(fb.rgb))


def read_image(path: Path) -> np.ndarray:
    """Read a binary PPM written by :func:`write_image` into an ``(H, W, 3)`` array."""
    data = path.read_bytes()
    match = _HEADER_RE.match(data)
    if not match or int(match.group(3)) != 255:
        raise ValueError(f"{path}: not an 8-bit binary PPM")
    width, height = int(match.group(1)), int(match.group(2))
    pixels = np.frombuffer(data, dtype=np.uint8, offset=match.end())
    if pixels.size != width * height * 3:
        raise ValueError(f"{path}: expected {width * height * 3} pixel bytes, got {pixels.size}")
    return pixels.reshape(height, width, 3).copy()


def depth_path(image_path: Path) -> Path:
    return image_path.with_name(image_path.stem + ".depth.npy")


def write_depth(fb: FrameBuffer, image_path: Path) -> Path:
    """Save the depth buffer next to ``image_path``; returns the depth file path."""
    path = depth_path(image_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.save(path, fb.depth)
    return path


def read_frame(image_path: Path) -> FrameBuffer:
    """Reassemble a framebuffer from a PPM and its depth companion."""
    return FrameBuffer(rgb=read_image(image_path), depth=np.load(depth_path(image_path)))
