"""Software raymarcher for opaque multi-isosurface images.

Each pixel's ray is clipped to the volume's bounding box and marched front to back at a
fixed step. The first step across which ``f - isovalue`` changes sign for any isovalue is
refined by bisection; the nearest refined crossing is the hit. Hits are shaded
Lambertian under a headlight with the isovalue's color; misses keep the background color
and depth 1.0.

All rays march together as numpy arrays; results do not depend on evaluation order.
"""

from dataclasses import dataclass

import numpy as np

from viewpath.render.camera import Camera, FrameBuffer
from viewpath.render.colormap import ColorMap
from viewpath.render.volume import ScalarVolume, gradient_points, sample_points

DEFAULT_ISO_FRACTIONS = (0.25, 0.5, 0.75)


@dataclass(frozen=True)
class RenderSpec:
    """How a volume is turned into an image."""

    isovalues: tuple[float, ...]
    colormap: ColorMap
    value_range: tuple[float, float]
    ambient: float = 0.3
    diffuse: float = 0.7
    background: tuple[int, int, int] = (0, 0, 0)
    step_fraction: float = 0.5
    bisection_steps: int = 4

    def __post_init__(self):
        if not self.isovalues:
            raise ValueError("at least one isovalue is required")
        lo, hi = self.value_range
        if not hi > lo:
            raise ValueError(f"value range must be increasing, got {self.value_range}")

    @classmethod
    def for_volume(
        cls, vol: ScalarVolume, colormap: ColorMap, isovalues=None, **kwargs
    ) -> "RenderSpec":
        """Spec with ``vol``'s value range; isovalues default to 25/50/75 % of it."""
        lo, hi = vol.value_range
        if hi <= lo:
            hi = lo + 1.0
        if isovalues is None:
            isovalues = tuple(lo + f * (hi - lo) for f in DEFAULT_ISO_FRACTIONS)
        return cls(
            isovalues=tuple(float(v) for v in isovalues),
            colormap=colormap,
            value_range=(lo, hi),
            **kwargs,
        )

    def colors(self) -> np.ndarray:
        """Float RGB per isovalue, sampled at its normalized position in the value range."""
        lo, hi = self.value_range
        t = (np.asarray(self.isovalues) - lo) / (hi - lo)
        return self.colormap.sample_many(t)


def _clip_to_box(origin, dirs, lower, upper):
    safe = np.where(np.abs(dirs) < 1e-15, 1e-15, dirs)
    t1 = (lower - origin) / safe
    t2 = (upper - origin) / safe
    t_near = np.minimum(t1, t2).max(axis=1)
    t_far = np.maximum(t1, t2).min(axis=1)
    return np.maximum(t_near, 0.0), t_far


def _refine(vol, origin, dirs, lo, hi, f_lo, iso, steps):
    below = f_lo < iso
    for _ in range(steps):
        mid = (lo + hi) / 2.0
        f_mid = sample_points(vol, origin + dirs * mid[:, None])
        same = (f_mid < iso) == below
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return (lo + hi) / 2.0


def render_isosurfaces(vol: ScalarVolume, cam: Camera, spec: RenderSpec) -> FrameBuffer:
    """Render ``vol`` from ``cam`` as opaque isosurfaces."""
    origin = np.asarray(cam.position, dtype=float)
    dirs = cam.ray_directions()
    n_rays = dirs.shape[0]
    step = spec.step_fraction * min(vol.spacing)
    isovalues = np.asarray(spec.isovalues)

    t_enter, t_exit = _clip_to_box(origin, dirs, vol.lower, vol.upper)
    hit_t = np.full(n_rays, np.inf)
    hit_iso = np.full(n_rays, -1, dtype=np.int64)

    idx = np.flatnonzero(t_exit >= t_enter)
    t_prev = t_enter[idx]
    f_prev = sample_points(vol, origin + dirs[idx] * t_prev[:, None]) if idx.size else None

    while idx.size:
        d = dirs[idx]
        t_cur = np.minimum(t_prev + step, t_exit[idx])
        f_cur = sample_points(vol, origin + d * t_cur[:, None])

        best_t = np.full(idx.size, np.inf)
        best_iso = np.full(idx.size, -1, dtype=np.int64)
        for k, iso in enumerate(isovalues):
            crossed = np.flatnonzero((f_prev < iso) != (f_cur < iso))
            if not crossed.size:
                continue
            t_k = _refine(
                vol,
                origin,
                d[crossed],
                t_prev[crossed],
                t_cur[crossed],
                f_prev[crossed],
                iso,
                spec.bisection_steps,
            )
            closer = t_k < best_t[crossed]
            best_t[crossed[closer]] = t_k[closer]
            best_iso[crossed[closer]] = k

        hit = best_iso >= 0
        hit_t[idx[hit]] = best_t[hit]
        hit_iso[idx[hit]] = best_iso[hit]

        alive = ~hit & (t_cur < t_exit[idx])
        idx, t_prev, f_prev = idx[alive], t_cur[alive], f_cur[alive]

    rgb = np.empty((n_rays, 3), dtype=np.uint8)
    rgb[:] = spec.background
    depth = np.ones(n_rays)

    hits = np.flatnonzero(hit_iso >= 0)
    if hits.size:
        d = dirs[hits]
        points = origin + d * hit_t[hits][:, None]
        normals = gradient_points(vol, points)
        lengths = np.linalg.norm(normals, axis=1)
        lambert = np.abs(np.einsum("ij,ij->i", normals, d))
        lambert = np.divide(lambert, lengths, out=np.ones_like(lambert), where=lengths > 0)
        intensity = spec.ambient + spec.diffuse * lambert
        shaded = spec.colors()[hit_iso[hits]] * intensity[:, None]
        rgb[hits] = np.clip(np.rint(shaded), 0, 255).astype(np.uint8)
        depth[hits] = cam.depth_of(hit_t[hits])

    return FrameBuffer(
        rgb=rgb.reshape(cam.height, cam.width, 3),
        depth=depth.reshape(cam.height, cam.width),
    )
