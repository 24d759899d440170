"""Quaternion algebra and the SLERP / SQUAD interpolation schemes.

Quaternions are ``w + xi + yj + zk`` with ``w`` the scalar part. All functions here are
pure and operate on immutable :class:`Quaternion` values, so they are safe to call from
any thread.

Hemisphere handling: :func:`slerp` aligns its second argument to the first before
interpolating, so callers always get the short arc. :func:`squad` does not: it expects
knots and control points aligned once per segment (see
:func:`viewpath.director.director.segment_curve`) and blends them with the flip-free
:func:`slerp_arc`.
"""

import math
from dataclasses import dataclass

import numpy as np

# Below this sin(phi) SLERP degenerates to a normalized lerp.
_PARALLEL_EPS = 1e-6


@dataclass(frozen=True)
class Quaternion:
    """A quaternion ``w + xi + yj + zk``."""

    w: float
    x: float
    y: float
    z: float

    @classmethod
    def identity(cls) -> "Quaternion":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, values) -> "Quaternion":
        w, x, y, z = (float(v) for v in values)
        return cls(w, x, y, z)

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "Quaternion":
        """Rotation of ``angle`` radians about ``axis`` (need not be unit length)."""
        a = np.asarray(axis, dtype=float)
        a = a / np.linalg.norm(a)
        s = math.sin(angle / 2.0)
        return cls(math.cos(angle / 2.0), a[0] * s, a[1] * s, a[2] * s)

    @classmethod
    def from_matrix(cls, m) -> "Quaternion":
        """Unit quaternion of a 3x3 rotation matrix (Shepperd's branch selection)."""
        m = np.asarray(m, dtype=float)
        trace = m[0, 0] + m[1, 1] + m[2, 2]
        if trace > 0.0:
            s = math.sqrt(trace + 1.0) * 2.0
            q = cls(
                0.25 * s,
                (m[2, 1] - m[1, 2]) / s,
                (m[0, 2] - m[2, 0]) / s,
                (m[1, 0] - m[0, 1]) / s,
            )
        elif m[0, 0] > m[1, 1] and m[0, 0] > m[2, 2]:
            s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2.0
            q = cls(
                (m[2, 1] - m[1, 2]) / s,
                0.25 * s,
                (m[0, 1] + m[1, 0]) / s,
                (m[0, 2] + m[2, 0]) / s,
            )
        elif m[1, 1] > m[2, 2]:
            s = math.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2]) * 2.0
            q = cls(
                (m[0, 2] - m[2, 0]) / s,
                (m[0, 1] + m[1, 0]) / s,
                0.25 * s,
                (m[1, 2] + m[2, 1]) / s,
            )
        else:
            s = math.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1]) * 2.0
            q = cls(
                (m[1, 0] - m[0, 1]) / s,
                (m[0, 2] + m[2, 0]) / s,
                (m[1, 2] + m[2, 1]) / s,
                0.25 * s,
            )
        return normalize(q)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def scale(self, k: float) -> "Quaternion":
        return Quaternion(self.w * k, self.x * k, self.y * k, self.z * k)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        """Hamilton product ``self * other``."""
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = other.w, other.x, other.y, other.z
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def to_matrix(self) -> np.ndarray:
        """3x3 rotation matrix of this (assumed unit) quaternion."""
        w, x, y, z = self.w, self.x, self.y, self.z
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )

    def rotate(self, v) -> np.ndarray:
        """Rotate a 3-vector (or an ``(N, 3)`` array of them) by this unit quaternion."""
        return np.asarray(v, dtype=float) @ self.to_matrix().T


def normalize(q: Quaternion) -> Quaternion:
    """Scale ``q`` to unit norm. Raises ``ValueError`` for a zero quaternion."""
    n = q.norm()
    if n == 0.0 or not math.isfinite(n):
        raise ValueError(f"degenerate quaternion {q}")
    return q.scale(1.0 / n)


def dot(q_a: Quaternion, q_b: Quaternion) -> float:
    """Four-dimensional inner product."""
    return q_a.w * q_b.w + q_a.x * q_b.x + q_a.y * q_b.y + q_a.z * q_b.z


def qexp(q: Quaternion) -> Quaternion:
    """Quaternion exponential ``e^a (cos|v| + v/|v| sin|v|)``."""
    ea = math.exp(q.w)
    vn = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if vn == 0.0:
        return Quaternion(ea, 0.0, 0.0, 0.0)
    k = ea * math.sin(vn) / vn
    return Quaternion(ea * math.cos(vn), q.x * k, q.y * k, q.z * k)


def qlog(q: Quaternion) -> Quaternion:
    """Quaternion logarithm ``log|q| + v/|v| arctan(|v| / a)``.

    The arctangent is evaluated as ``atan2(|v|, a)`` so a zero or negative scalar part
    lands on the correct branch (``a = 0`` gives pi/2).
    """
    n = q.norm()
    if n == 0.0:
        raise ValueError(f"degenerate quaternion {q}: logarithm of zero")
    vn = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if vn == 0.0:
        return Quaternion(math.log(n), 0.0, 0.0, 0.0)
    k = math.atan2(vn, q.w) / vn
    return Quaternion(math.log(n), q.x * k, q.y * k, q.z * k)


def ensure_shortest(q_a: Quaternion, q_b: Quaternion) -> Quaternion:
    """Return ``q_b`` or ``-q_b``, whichever lies in ``q_a``'s hemisphere."""
    return q_b if dot(q_a, q_b) >= 0.0 else -q_b


def slerp_arc(q_a: Quaternion, q_b: Quaternion, t: float) -> Quaternion:
    """Spherical linear interpolation along the great arc from ``q_a`` to ``q_b`` as given.

    No hemisphere flip: with ``dot(q_a, q_b) < 0`` this follows the long arc. ``t = 0``
    and ``t = 1`` return the endpoints exactly, as do equal endpoints.
    """
    if t == 0.0 or q_a == q_b:
        return q_a
    if t == 1.0:
        return q_b
    d = min(1.0, max(-1.0, dot(q_a, q_b)))
    phi = math.acos(d)
    sin_phi = math.sin(phi)
    if sin_phi < _PARALLEL_EPS:
        if d < 0.0:
            # Antipodal: q_b is the same rotation as q_a.
            return q_a
        return normalize(q_a.scale(1.0 - t) + q_b.scale(t))
    k_a = math.sin((1.0 - t) * phi) / sin_phi
    k_b = math.sin(t * phi) / sin_phi
    return normalize(q_a.scale(k_a) + q_b.scale(k_b))


def slerp(q_a: Quaternion, q_b: Quaternion, t: float) -> Quaternion:
    """Spherical linear interpolation along the short great arc from ``q_a`` to ``q_b``.

    ``t = 0`` returns ``q_a`` and ``t = 1`` returns the hemisphere-aligned ``q_b``
    exactly. Nearly parallel inputs fall back to a normalized lerp.
    """
    return slerp_arc(q_a, ensure_shortest(q_a, q_b), t)


def squad_control(q_prev: Quaternion, q_i: Quaternion, q_next: Quaternion) -> Quaternion:
    """Inner control point ``a_i = q_i exp(-(log(q_i* q_prev) + log(q_i* q_next)) / 4)``.

    The result is returned in ``q_i``'s hemisphere.
    """
    inv = q_i.conjugate()
    log_prev = qlog(inv * q_prev)
    log_next = qlog(inv * q_next)
    return ensure_shortest(q_i, normalize(q_i * qexp((log_prev + log_next).scale(-0.25))))


def squad(
    q_i: Quaternion, q_ip1: Quaternion, a_i: Quaternion, a_ip1: Quaternion, t: float
) -> Quaternion:
    """Spherical quadrangle interpolation between ``q_i`` and ``q_ip1``.

    Inputs are taken as already hemisphere-aligned (``q_ip1`` to ``q_i``, each control
    point to its knot). All three blends use :func:`slerp_arc`, so the curve never
    flips sign partway through a segment.
    """
    return slerp_arc(slerp_arc(q_i, q_ip1, t), slerp_arc(a_i, a_ip1, t), 2.0 * t * (1.0 - t))


def rotation_angle(q_a: Quaternion, q_b: Quaternion) -> float:
    """Angle in radians of the rotation taking ``q_a`` to ``q_b`` (sign-agnostic)."""
    return 2.0 * math.acos(min(1.0, abs(dot(q_a, q_b))))
