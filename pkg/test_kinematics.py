import math
import pickle
import unittest

import numpy as np
import pytest

from config import NATURAL_CONSTANTS, SI_CONSTANTS
from errors import DomainError
from kinematics import (
    INFINITE_VELOCITY,
    Boost,
    Event,
    collinear_velocity_addition,
    compose_boosts,
    compose_velocities,
    gamma_factor,
    imaginary_rotation_angle,
    interval,
    is_infinite,
    length_contraction_pair,
    lorentz_boost,
    muon_penetration,
    relativistic_doppler,
    simultaneity_phase_velocity,
    time_dilation_pair,
    voigt_transform,
)

C = SI_CONSTANTS.C


class GammaAndBoostTests(unittest.TestCase):
    def test_gamma_at_rest_is_one(self):
        self.assertEqual(gamma_factor(0.0), 1.0)

    def test_gamma_at_point_six_c(self):
        self.assertAlmostEqual(gamma_factor(0.6 * C), 1.25, places=12)

    def test_gamma_hundred_speed(self):
        v = C * math.sqrt(1.0 - 1.0 / 100.0**2)
        self.assertAlmostEqual(v / C, 0.99995, places=6)
        self.assertAlmostEqual(gamma_factor(v) / 100.0, 1.0, places=9)

    def test_gamma_rejects_luminal_and_faster(self):
        for v in (C, -C, 4e8, math.inf, math.nan):
            with self.assertRaises(DomainError):
                gamma_factor(v)

    def test_gamma_accepts_arrays_and_is_monotone(self):
        v = np.linspace(0.0, 0.99 * C, 50)
        g = gamma_factor(v)
        self.assertEqual(g.shape, (50,))
        self.assertTrue(np.all(np.diff(g) > 0))
        self.assertTrue(np.all(g >= 1.0))

    def test_boost_checks_invariants(self):
        with self.assertRaises(DomainError):
            Boost(v=0.5 * C, gamma=1.0, rapidity=0.0)
        b = Boost.from_velocity(0.5 * C)
        self.assertAlmostEqual(math.tanh(b.rapidity), 0.5, places=14)
        self.assertEqual(b.inverse().v, -b.v)

    def test_boost_from_rapidity(self):
        b = Boost.from_rapidity(1.0)
        self.assertAlmostEqual(b.beta, math.tanh(1.0), places=14)

    def test_natural_units(self):
        b = Boost.from_velocity(0.6, NATURAL_CONSTANTS)
        self.assertAlmostEqual(b.gamma, 1.25, places=12)


def test_lorentz_boost_examples():
    ev = Event(t=1.0, x=0.0)
    assert lorentz_boost(ev, Boost.from_velocity(0.0)) == ev
    assert lorentz_boost(Event(0.0, 0.0), Boost.from_velocity(0.3 * C)) == Event(0.0, 0.0)

    moved = lorentz_boost(ev, Boost.from_velocity(0.6 * C))
    assert moved.t == pytest.approx(1.25, rel=1e-12)
    assert moved.x == pytest.approx(-0.75 * C, rel=1e-12)


def test_voigt_transform_omits_gamma():
    ev = Event(t=1.0, x=0.0, y=2.0, z=3.0)
    moved = voigt_transform(ev, 0.6 * C)
    assert moved.t == pytest.approx(1.0, rel=1e-15)
    assert moved.x == pytest.approx(-0.6 * C, rel=1e-12)
    assert (moved.y, moved.z) == (2.0, 3.0)
    assert voigt_transform(ev, 0.0) == ev

    other = Event(t=1.0, x=1.0)
    v = 0.6 * C
    voigt = voigt_transform(other, v)
    lorentz = lorentz_boost(other, Boost.from_velocity(v))
    assert voigt != lorentz
    assert lorentz.t == pytest.approx(1.25 * voigt.t, rel=1e-12)
    assert lorentz.x == pytest.approx(1.25 * voigt.x, rel=1e-12)


def test_event_requires_finite_coordinates():
    with pytest.raises(DomainError):
        Event(t=math.inf, x=0.0)


def test_lorentz_boost_preserves_interval_and_round_trips():
    rng = np.random.default_rng(11)
    for _ in range(2000):
        t = rng.uniform(-1.0, 1.0)
        # timelike events keep the quadratic form away from zero
        x, y, z = rng.uniform(-0.3, 0.3, size=3) * C * abs(t)
        ev = Event(t=t, x=x, y=y, z=z)
        b = Boost.from_velocity(rng.uniform(-0.995, 0.995) * C)
        moved = lorentz_boost(ev, b)
        assert interval(moved) == pytest.approx(interval(ev), rel=1e-10)

        back = lorentz_boost(moved, b.inverse())
        scale = C * abs(t) + abs(x)
        assert abs(back.t - t) * C <= 1e-10 * scale
        assert abs(back.x - x) <= 1e-10 * scale


def test_compose_velocities_examples():
    out = compose_velocities([C, 0.0, 0.0], 0.7 * C)
    assert np.linalg.norm(out) == pytest.approx(C, rel=1e-12)

    u = np.array([1.0e7, -2.0e6, 3.0e5])
    np.testing.assert_array_equal(compose_velocities(u, 0.0), u)

    out = compose_velocities([0.5 * C, 0.0, 0.0], -0.5 * C)
    assert out[0] == pytest.approx(0.8 * C, rel=1e-12)


def test_compose_velocities_rejects_superluminal_u():
    with pytest.raises(DomainError):
        compose_velocities([1.1 * C, 0.0, 0.0], 0.1 * C)
    with pytest.raises(DomainError):
        compose_velocities([0.1 * C, 0.0, 0.0], C)


def test_compose_velocities_never_exceeds_c():
    rng = np.random.default_rng(2024)
    n = 1_000_000
    direction = rng.standard_normal((n, 3))
    direction /= np.linalg.norm(direction, axis=1)[:, None]
    speed = C * rng.uniform(0.0, 1.0, n)
    speed[::10] = C
    u = direction * speed[:, None]
    u /= np.maximum(np.linalg.norm(u, axis=1) / C, 1.0)[:, None]
    # frame speeds up to gamma ~ 550
    v = C * np.tanh(rng.uniform(-7.0, 7.0, n))

    out = compose_velocities(u, v)
    out_speed = np.linalg.norm(out, axis=1)
    assert np.all(out_speed <= C * (1.0 + 1e-9))

    luminal = np.isclose(np.linalg.norm(u, axis=1), C, rtol=1e-15, atol=0.0)
    assert luminal.sum() >= n // 10
    # luminal inputs with moderate frame speeds stay luminal to rounding
    moderate = luminal & (np.abs(v) < 0.9 * C)
    np.testing.assert_allclose(out_speed[moderate], C, rtol=1e-12)


def test_luminal_oblique_signal_stays_luminal():
    angle = 0.7
    u = C * np.array([math.cos(angle), math.sin(angle), 0.0])
    for beta in (-0.9, -0.3, 0.2, 0.8):
        out = compose_velocities(u, beta * C)
        assert np.linalg.norm(out) == pytest.approx(C, rel=1e-12)


def test_boost_composition_adds_rapidities():
    rng = np.random.default_rng(5)
    for _ in range(5000):
        b1 = Boost.from_velocity(rng.uniform(-0.9, 0.9) * C)
        b2 = Boost.from_velocity(rng.uniform(-0.9, 0.9) * C)
        b3 = Boost.from_velocity(rng.uniform(-0.9, 0.9) * C)
        combined = compose_boosts(b1, b2)
        assert combined.rapidity == pytest.approx(b1.rapidity + b2.rapidity, rel=1e-10, abs=1e-12)

        left = compose_boosts(compose_boosts(b1, b2), b3)
        right = compose_boosts(b1, compose_boosts(b2, b3))
        assert left.rapidity == pytest.approx(right.rapidity, rel=1e-10, abs=1e-12)


def test_collinear_addition_matches_vector_form():
    assert collinear_velocity_addition(0.5 * C, -0.5 * C) == pytest.approx(0.8 * C, rel=1e-12)
    values = collinear_velocity_addition(np.array([0.1, 0.2]) * C, 0.3 * C)
    assert values.shape == (2,)


class IntervalPairTests(unittest.TestCase):
    def test_time_dilation_examples(self):
        pair = time_dilation_pair(1.0, 0.0)
        self.assertEqual((pair.dilated, pair.contracted), (1.0, 1.0))
        pair = time_dilation_pair(1.0, 0.6 * C)
        self.assertAlmostEqual(pair.dilated, 1.25, places=12)
        self.assertAlmostEqual(pair.contracted, 0.8, places=12)
        self.assertAlmostEqual(pair.dilated * pair.contracted, 1.0, places=12)

    def test_time_dilation_rejects_non_positive(self):
        with self.assertRaises(DomainError):
            time_dilation_pair(0.0, 0.1 * C)

    def test_length_contraction_examples(self):
        pair = length_contraction_pair(1.0, 0.0)
        self.assertEqual((pair.tilde_l, pair.bar_l, pair.rest), (1.0, 1.0, 1.0))
        pair = length_contraction_pair(1.0, 0.6 * C)
        self.assertAlmostEqual(pair.tilde_l, 0.8, places=12)
        self.assertAlmostEqual(pair.bar_l, 0.8, places=12)
        self.assertAlmostEqual(pair.tilde_l * pair.bar_l, 0.64, places=12)
        self.assertAlmostEqual(pair.reconstructed_rest, 1.0, places=12)

    def test_length_contraction_rejects_non_positive(self):
        with self.assertRaises(DomainError):
            length_contraction_pair(-1.0, 0.1 * C)


def test_product_identities_over_random_draws():
    rng = np.random.default_rng(7)
    max_rapidity = math.acosh(1e3)
    for _ in range(10_000):
        v = C * math.tanh(rng.uniform(-max_rapidity, max_rapidity))
        dt = 10 ** rng.uniform(-9, 3)
        l = 10 ** rng.uniform(-3, 6)
        times = time_dilation_pair(dt, v)
        assert times.dilated * times.contracted == pytest.approx(dt * dt, rel=1e-12)
        lengths = length_contraction_pair(l, v)
        assert lengths.tilde_l * lengths.bar_l == pytest.approx(lengths.primed**2, rel=1e-12)


def test_simultaneity_phase_velocity():
    assert simultaneity_phase_velocity(C) == pytest.approx(C, rel=1e-15)
    assert simultaneity_phase_velocity(0.5 * C) == pytest.approx(2.0 * C, rel=1e-15)
    rest = simultaneity_phase_velocity(0.0)
    assert rest is INFINITE_VELOCITY
    assert is_infinite(rest)
    assert float(rest) == math.inf
    assert str(rest) == "inf"
    assert pickle.loads(pickle.dumps(rest)) is INFINITE_VELOCITY
    with pytest.raises(DomainError):
        simultaneity_phase_velocity(1.5 * C)


def test_muon_passage():
    passage = muon_penetration(2.2e-6, 100.0, 10_000.0)
    assert passage.rest_length == pytest.approx(660.0, rel=5e-3)
    assert passage.boosted_length == pytest.approx(66_000.0, rel=5e-3)
    assert passage.surviving_fraction == pytest.approx(math.exp(-10_000.0 / passage.boosted_length))
    assert passage.surviving_fraction == pytest.approx(0.859, abs=1e-3)

    halved = muon_penetration(2.2e-6, 100.0, 10_000.0, half_life=True)
    assert halved.surviving_fraction == pytest.approx(2.0 ** (-10_000.0 / halved.boosted_length))

    with pytest.raises(DomainError):
        muon_penetration(2.2e-6, 0.5, 1.0)


def test_doppler_and_rotation_angle():
    assert relativistic_doppler(1.0, 0.6) == pytest.approx(2.0)
    assert relativistic_doppler(1.0, -0.6) == pytest.approx(0.5)
    angle = imaginary_rotation_angle(0.6 * C)
    assert angle.tanh_alpha == pytest.approx(0.6, rel=1e-14)
    assert angle.gamma_beta == pytest.approx(0.75, rel=1e-12)
