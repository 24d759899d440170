"""Tests for quaternion algebra and SLERP / SQUAD."""

import math

import numpy as np
import pytest

from viewpath.geometry.quat import (
    Quaternion,
    dot,
    ensure_shortest,
    normalize,
    qexp,
    qlog,
    rotation_angle,
    slerp,
    slerp_arc,
    squad,
    squad_control,
)

Z_AXIS = (0.0, 0.0, 1.0)
N_RANDOM = 1000


def _close(q_a: Quaternion, q_b: Quaternion, tol: float = 1e-9) -> bool:
    """Equal as rotations (q and -q are the same rotation)."""
    return rotation_angle(q_a, q_b) < tol or abs(abs(dot(q_a, q_b)) - 1.0) < tol


def _random_unit(rng) -> Quaternion:
    return normalize(Quaternion.from_array(rng.normal(size=4)))


def _aligned_chain(rng, n: int) -> list[Quaternion]:
    """``n`` random unit quaternions, each in its predecessor's hemisphere."""
    chain = [_random_unit(rng)]
    while len(chain) < n:
        chain.append(ensure_shortest(chain[-1], _random_unit(rng)))
    return chain


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


# Reference formulas on plain [w, x, y, z] arrays.


def _ref_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    )


def _ref_log_unit(q):
    v = q[1:]
    angle = math.atan2(np.linalg.norm(v), q[0])
    return np.concatenate([[0.0], v / np.linalg.norm(v) * angle])


def _ref_exp_pure(v):
    angle = np.linalg.norm(v[1:])
    return np.concatenate([[math.cos(angle)], v[1:] / angle * math.sin(angle)])


def _ref_slerp(p, q, t):
    phi = math.acos(np.clip(np.dot(p, q), -1.0, 1.0))
    return (math.sin((1 - t) * phi) * p + math.sin(t * phi) * q) / math.sin(phi)


class TestAlgebra:
    def test_hamilton_units(self):
        i = Quaternion(0, 1, 0, 0)
        j = Quaternion(0, 0, 1, 0)
        k = Quaternion(0, 0, 0, 1)
        assert i * j == k
        assert j * i == -k
        assert i * i == Quaternion(-1, 0, 0, 0)

    def test_identity_is_neutral(self):
        q = Quaternion(0.5, 0.5, -0.5, 0.5)
        assert Quaternion.identity() * q == q
        assert q * Quaternion.identity() == q

    def test_normalize(self):
        q = normalize(Quaternion(2.0, 0.0, 0.0, 0.0))
        assert q == Quaternion(1.0, 0.0, 0.0, 0.0)

    def test_normalize_zero_raises(self):
        with pytest.raises(ValueError, match="degenerate"):
            normalize(Quaternion(0.0, 0.0, 0.0, 0.0))

    def test_rotate_quarter_turn_about_z(self):
        q = Quaternion.from_axis_angle(Z_AXIS, math.pi / 2)
        np.testing.assert_allclose(q.rotate((1.0, 0.0, 0.0)), (0.0, 1.0, 0.0), atol=1e-12)

    def test_rotate_batch(self):
        q = Quaternion.from_axis_angle((1.0, 1.0, 0.0), 0.7)
        vs = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]])
        batch = q.rotate(vs)
        for v, r in zip(vs, batch, strict=True):
            np.testing.assert_allclose(q.rotate(v), r)

    def test_matrix_round_trip(self):
        q = normalize(Quaternion(0.3, -0.4, 0.5, 0.6))
        assert _close(Quaternion.from_matrix(q.to_matrix()), q)

    def test_from_matrix_half_turn(self):
        q = Quaternion.from_axis_angle((1.0, 0.0, 0.0), math.pi)
        assert _close(Quaternion.from_matrix(q.to_matrix()), q)


class TestExpLog:
    def test_log_of_identity_is_zero(self):
        assert qlog(Quaternion.identity()) == Quaternion(0.0, 0.0, 0.0, 0.0)

    def test_log_pure_quaternion_uses_half_pi(self):
        log = qlog(Quaternion(0.0, 0.0, 0.0, 1.0))
        assert log.w == pytest.approx(0.0)
        assert log.z == pytest.approx(math.pi / 2)

    def test_log_negative_scalar_part(self):
        q = Quaternion.from_axis_angle(Z_AXIS, 1.5 * math.pi)  # w < 0
        assert qlog(q).z == pytest.approx(0.75 * math.pi)

    def test_exp_inverts_log(self):
        q = normalize(Quaternion(-0.2, 0.4, 0.1, -0.7))
        back = qexp(qlog(q))
        np.testing.assert_allclose(back.as_array(), q.as_array(), atol=1e-12)

    def test_log_zero_raises(self):
        with pytest.raises(ValueError):
            qlog(Quaternion(0.0, 0.0, 0.0, 0.0))

    def test_exp_inverts_log_on_random_units(self, rng):
        worst = 0.0
        for _ in range(N_RANDOM):
            q = _random_unit(rng)
            worst = max(worst, float(np.abs(qexp(qlog(q)).as_array() - q.as_array()).max()))
        assert worst < 1e-12


class TestEnsureShortest:
    def test_random_pairs(self, rng):
        for _ in range(N_RANDOM):
            a, b = _random_unit(rng), _random_unit(rng)
            aligned = ensure_shortest(a, b)
            assert dot(a, aligned) >= 0.0
            assert aligned in (b, -b)
            np.testing.assert_array_equal(aligned.to_matrix(), b.to_matrix())


class TestSlerp:
    def test_endpoints_exact(self):
        a = Quaternion.from_axis_angle(Z_AXIS, 0.2)
        b = Quaternion.from_axis_angle((0.0, 1.0, 0.0), 1.1)
        assert slerp(a, b, 0.0) == a
        assert slerp(a, b, 1.0) == b

    def test_midpoint_halves_angle(self):
        a = Quaternion.identity()
        b = Quaternion.from_axis_angle(Z_AXIS, math.pi / 2)
        mid = slerp(a, b, 0.5)
        assert _close(mid, Quaternion.from_axis_angle(Z_AXIS, math.pi / 4))

    def test_takes_short_arc(self):
        a = Quaternion.from_axis_angle(Z_AXIS, 0.1)
        b = -Quaternion.from_axis_angle(Z_AXIS, 0.5)
        mid = slerp(a, b, 0.5)
        assert _close(mid, Quaternion.from_axis_angle(Z_AXIS, 0.3))
        assert slerp(a, b, 1.0) == ensure_shortest(a, b)

    def test_parallel_inputs_fall_back(self):
        q = Quaternion.from_axis_angle(Z_AXIS, 0.3)
        assert _close(slerp(q, -q, 0.5), q)

    @pytest.mark.parametrize("t", [0.1, 0.25, 0.5, 0.8, 0.95])
    def test_unit_norm(self, t):
        a = normalize(Quaternion(0.1, 0.9, -0.3, 0.2))
        b = normalize(Quaternion(0.7, -0.1, 0.4, 0.5))
        assert slerp(a, b, t).norm() == pytest.approx(1.0, abs=1e-12)

    def test_constant_angular_velocity(self):
        a = Quaternion.identity()
        b = Quaternion.from_axis_angle((1.0, 2.0, 3.0), 2.0)
        samples = [slerp(a, b, i / 10) for i in range(11)]
        steps = [rotation_angle(p, q) for p, q in zip(samples, samples[1:], strict=False)]
        assert max(steps) - min(steps) < 1e-9
        assert sum(steps) == pytest.approx(2.0)

    def test_constant_angular_velocity_on_random_pairs(self, rng):
        for _ in range(N_RANDOM):
            a, b = _random_unit(rng), _random_unit(rng)
            samples = [slerp(a, b, i / 10) for i in range(11)]
            steps = [rotation_angle(p, q) for p, q in zip(samples, samples[1:], strict=False)]
            assert max(steps) - min(steps) < 1e-9
            assert sum(steps) == pytest.approx(rotation_angle(a, b), abs=1e-9)

    def test_arc_keeps_the_given_sign(self):
        a = Quaternion.from_axis_angle(Z_AXIS, 0.1)
        b = -Quaternion.from_axis_angle(Z_AXIS, 0.5)
        assert slerp_arc(a, b, 1.0) == b
        path = [slerp_arc(a, b, i / 20) for i in range(21)]
        dots = [dot(p, q) for p, q in zip(path, path[1:], strict=False)]
        assert min(dots) > 0.95
        assert dot(a, path[10]) > 0.0 > dot(b, path[5])

    def test_arc_between_antipodes_stays_put(self):
        q = Quaternion.from_axis_angle(Z_AXIS, 0.3)
        assert slerp_arc(q, -q, 0.4) == q


class TestSquad:
    @pytest.fixture
    def knots(self):
        return [
            Quaternion.from_axis_angle(Z_AXIS, 0.0),
            Quaternion.from_axis_angle((0.0, 1.0, 0.0), 0.6),
            Quaternion.from_axis_angle((1.0, 0.0, 1.0), 1.2),
            Quaternion.from_axis_angle(Z_AXIS, 1.7),
        ]

    def test_endpoints(self, knots):
        q0, q1, q2, q3 = knots
        a1 = squad_control(q0, q1, q2)
        a2 = squad_control(q1, q2, q3)
        assert squad(q1, q2, a1, a2, 0.0) == q1
        assert _close(squad(q1, q2, a1, a2, 1.0), q2)

    def test_equal_knots_are_constant(self):
        q = Quaternion.from_axis_angle((1.0, 1.0, 1.0), 0.9)
        a = squad_control(q, q, q)
        assert _close(a, q)
        for t in (0.2, 0.5, 0.7):
            assert _close(squad(q, q, a, a, t), q)

    def test_evenly_spaced_knots_match_slerp(self):
        knots = [Quaternion.from_axis_angle(Z_AXIS, 0.4 * i) for i in range(4)]
        a1 = squad_control(*knots[0:3])
        a2 = squad_control(*knots[1:4])
        for t in (0.1, 0.5, 0.9):
            assert _close(squad(knots[1], knots[2], a1, a2, t), slerp(knots[1], knots[2], t))

    def test_unit_norm(self, knots):
        q0, q1, q2, q3 = knots
        a1 = squad_control(q0, q1, q2)
        a2 = squad_control(q1, q2, q3)
        for i in range(11):
            assert squad(q1, q2, a1, a2, i / 10).norm() == pytest.approx(1.0, abs=1e-12)

    def test_control_point_matches_reference(self, rng):
        for _ in range(200):
            q_prev, q_i, q_next = _aligned_chain(rng, 3)
            q_prev = ensure_shortest(q_i, q_prev)
            conj = q_i.conjugate().as_array()
            log_prev = _ref_log_unit(_ref_mul(conj, q_prev.as_array()))
            log_next = _ref_log_unit(_ref_mul(conj, q_next.as_array()))
            expected = _ref_mul(q_i.as_array(), _ref_exp_pure(-(log_prev + log_next) / 4.0))
            a = squad_control(q_prev, q_i, q_next)
            np.testing.assert_allclose(a.as_array(), expected, atol=1e-12)
            assert dot(a, q_i) > 0.0

    def test_matches_nested_slerp_reference(self, rng):
        for _ in range(200):
            q0, q1, q2, q3 = _aligned_chain(rng, 4)
            a1 = squad_control(q0, q1, q2)
            a2 = squad_control(q1, q2, q3)
            arrays = [q.as_array() for q in (q1, q2, a1, a2)]
            for t in np.linspace(0.05, 0.95, 7):
                outer = _ref_slerp(
                    _ref_slerp(arrays[0], arrays[1], t),
                    _ref_slerp(arrays[2], arrays[3], t),
                    2.0 * t * (1.0 - t),
                )
                np.testing.assert_allclose(squad(q1, q2, a1, a2, t).as_array(), outer, atol=1e-10)

    def test_knots_as_controls_reduce_to_slerp(self, rng):
        for _ in range(100):
            q_i, q_ip1 = _aligned_chain(rng, 2)
            for i in range(11):
                t = i / 10
                assert squad(q_i, q_ip1, q_i, q_ip1, t) == slerp(q_i, q_ip1, t)

    def test_no_sign_flip_when_inner_curves_diverge(self):
        """Controls on opposite sides of the knots: a per-sample hemisphere flip of the outer
        blend would jump by almost a half turn."""
        q_i = Quaternion.identity()
        q_ip1 = Quaternion.from_axis_angle(Z_AXIS, 0.4)
        a_i = normalize(Quaternion(0.1, 0.995, 0.0, 0.0))
        a_ip1 = normalize(Quaternion(0.3, -0.954, 0.0, 0.0))
        assert dot(a_i, q_i) > 0.0 and dot(a_ip1, q_ip1) > 0.0
        samples = [squad(q_i, q_ip1, a_i, a_ip1, i / 100) for i in range(101)]
        steps = [rotation_angle(p, q) for p, q in zip(samples, samples[1:], strict=False)]
        assert max(steps) < 0.5
        assert all(dot(p, q) > 0.0 for p, q in zip(samples, samples[1:], strict=False))
