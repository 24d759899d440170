"""Frame manifest for an external video encoder.

Format: a ``fps=<n>`` header line, then one frame path per line, in playback order,
relative to the manifest's directory. Encoding is left to ffmpeg; see
:func:`encoder_command`.
"""

import os
from pathlib import Path


def write_manifest(frame_paths: list[Path], fps: int, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    base = path.parent.resolve()
    lines = [f"fps={fps}"]
    lines += [Path(os.path.relpath(p.resolve(), base)).as_posix() for p in frame_paths]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_manifest(path: Path) -> tuple[int, list[Path]]:
    """Return ``(fps, frame paths)``; paths are resolved against the manifest directory."""
    lines = [line for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines or not lines[0].startswith("fps="):
        raise ValueError(f"{path}: manifest must start with an fps=<n> line")
    fps = int(lines[0].removeprefix("fps="))
    return fps, [path.parent / line for line in lines[1:]]


def encoder_command(
    manifest: Path, output: Path, frame_pattern: str = "frame_%06d.ppm"
) -> list[str]:
    """ffmpeg argv that encodes the manifest's frame sequence into ``output``.

    Frames are numbered contiguously, so ffmpeg's image2 sequence input reads them in
    manifest order.
    """
    fps, frames = read_manifest(manifest)
    directory = frames[0].parent if frames else manifest.parent
    return [
        "ffmpeg",
        "-y",
        "-framerate",
        str(fps),
        "-i",
        str(directory / frame_pattern),
        "-c:v",
        "libx264",
        "-pix_fmt",
        "yuv420p",
        str(output),
    ]
