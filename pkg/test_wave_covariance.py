import math

import numpy as np
import pytest

from config import NATURAL_CONSTANTS, SI_CONSTANTS
from errors import DomainError
from kinematics import Boost, Event, lorentz_boost
from wave_covariance import (
    FieldGrid,
    GridGeometry,
    PlaneWave,
    PolynomialField,
    acoustic_doppler,
    covariance_comparison,
    dalembertian_residual,
    light_doppler,
    refinement_study,
    sample_field,
    transform_plane_wave,
)

C = SI_CONSTANTS.C

# dyadic steps keep polynomial stencils free of rounding
DYADIC = GridGeometry(n_t=9, n_x=11, dt=0.25, dx=0.5, t0=0.0, x0=0.0)


def test_constant_field_samples_and_vanishes():
    grid = sample_field(PolynomialField({(0, 0): 1.0}), DYADIC)
    assert np.all(grid.values == 1.0)
    assert dalembertian_residual(grid, NATURAL_CONSTANTS).l2_norm == 0.0


def test_quadratic_in_x_has_residual_two():
    geometry = GridGeometry(n_t=7, n_x=9, dt=0.25, dx=0.5, t0=1.0, x0=-1.0)
    grid = sample_field(PolynomialField({(0, 2): 1.0}), geometry)
    _, x = geometry.axes()
    np.testing.assert_array_equal(grid.values[0], (x - geometry.x0) ** 2)

    residual = dalembertian_residual(grid, NATURAL_CONSTANTS)
    assert residual.residual_grid.shape == (5, 7)
    assert np.all(residual.residual_grid == 2.0)
    assert residual.l2_norm == 2.0


def test_affine_fields_have_zero_residual():
    exact = sample_field(PolynomialField({(0, 0): 1.0, (0, 1): 0.5, (1, 0): 0.25}), DYADIC)
    assert dalembertian_residual(exact, NATURAL_CONSTANTS).l2_norm == 0.0

    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b, c = rng.uniform(-2.0, 2.0, size=3)
        geometry = GridGeometry(n_t=8, n_x=8, dt=0.013, dx=0.021)
        grid = sample_field(PolynomialField({(0, 0): a, (0, 1): b, (1, 0): c}), geometry)
        assert dalembertian_residual(grid, NATURAL_CONSTANTS).l2_norm == pytest.approx(0.0, abs=1e-9)


def test_plane_wave_samples_are_pointwise_cosines():
    wave = PlaneWave.luminal_wave(omega=2.0 * math.pi * C, constants=SI_CONSTANTS, phase0=0.3)
    geometry = GridGeometry.for_wavelength(wave.wavelength, 16)
    grid = sample_field(wave, geometry)
    t, x = geometry.axes()
    expected = np.cos(wave.k[0] * x[None, :] - wave.omega * t[:, None] + 0.3)
    np.testing.assert_allclose(grid.values, expected, rtol=0, atol=1e-12)


def test_grid_guards():
    with pytest.raises(DomainError):
        sample_field(PolynomialField({(0, 0): 1.0}), GridGeometry(n_t=0, n_x=4, dt=1.0, dx=1.0))
    for shape in ((4, 10), (10, 4)):
        with pytest.raises(DomainError):
            FieldGrid(values=np.zeros(shape), dt=1.0, dx=1.0)
    with pytest.raises(DomainError):
        sample_field(PolynomialField({(0, 0): 1.0}), GridGeometry(n_t=4, n_x=9, dt=1.0, dx=1.0))
    smallest = FieldGrid(values=np.zeros((5, 5)), dt=1.0, dx=1.0)
    assert dalembertian_residual(smallest).residual_grid.shape == (3, 3)
    with pytest.raises(DomainError):
        FieldGrid(values=np.zeros((6, 6)), dt=0.0, dx=1.0)
    with pytest.raises(DomainError):
        PlaneWave(k=(2.0, 0.0, 0.0), omega=1.0, luminal=True).validate(NATURAL_CONSTANTS)


def test_zero_velocity_gives_identical_norms():
    wave = PlaneWave.luminal_wave(omega=2.0 * math.pi * C)
    geometry = GridGeometry.for_wavelength(wave.wavelength, 32)
    norms = covariance_comparison(wave, 0.0, geometry)
    assert norms["lorentz"] == norms["voigt"] == norms["galilean"]


def test_untransformed_residual_converges_at_second_order():
    wave = PlaneWave.luminal_wave(omega=2.0 * math.pi * C)
    study = refinement_study(wave, 0.0, "lorentz", (64, 128, 256))
    assert study.norms[0] > study.norms[1] > study.norms[2] > 0
    for order in study.orders:
        assert order == pytest.approx(2.0, abs=0.2)


def test_lorentz_converges_while_galilean_does_not():
    wave = PlaneWave.luminal_wave(omega=2.0 * math.pi * C)
    v = 0.5 * C
    lorentz = refinement_study(wave, v, "lorentz", (64, 128, 256))
    galilean = refinement_study(wave, v, "galilean", (64, 128, 256))
    voigt = refinement_study(wave, v, "voigt", (64, 128, 256))

    for order in lorentz.orders:
        assert order == pytest.approx(2.0, abs=0.2)
    for order in voigt.orders:
        assert order == pytest.approx(2.0, abs=0.2)
    assert abs(lorentz.extrapolated_norm) < 1e-2 * lorentz.norms[0]

    # the Galilean residual tends to a constant set by the cross terms
    assert galilean.norms[-1] == pytest.approx(galilean.norms[-2], rel=1e-2)
    assert galilean.extrapolated_norm > 0.5 * galilean.norms[-1]
    assert galilean.norms[-1] / lorentz.norms[-1] >= 1e2


def test_galilean_residual_bounded_away_from_zero_at_low_speed():
    wave = PlaneWave.luminal_wave(omega=2.0 * math.pi * C)
    study = refinement_study(wave, 0.1 * C, "galilean", (64, 128))
    k = 2.0 * math.pi
    beta = 0.1
    # analytic amplitude k²·|β² − 2β|, RMS of a cosine is about 1/sqrt(2)
    assert study.extrapolated_norm > 0.3 * k**2 * abs(beta**2 - 2 * beta)


def test_refinement_needs_two_levels():
    wave = PlaneWave.luminal_wave(omega=1.0, constants=NATURAL_CONSTANTS)
    with pytest.raises(DomainError):
        refinement_study(wave, 0.1, "lorentz", (64,), NATURAL_CONSTANTS)
    for levels in ((64, 64), (128, 64)):
        with pytest.raises(DomainError):
            refinement_study(wave, 0.1, "lorentz", levels, NATURAL_CONSTANTS)
    with pytest.raises(DomainError):
        covariance_comparison(wave, 0.1, GridGeometry(8, 8, 0.1, 0.1), ("euclid",), NATURAL_CONSTANTS)


def test_transform_plane_wave_examples():
    wave = PlaneWave.luminal_wave(omega=1.0e15)
    same = transform_plane_wave(wave, Boost.from_velocity(0.0))
    assert same.omega == wave.omega
    assert same.k == wave.k

    receding = transform_plane_wave(wave, Boost.from_velocity(0.6 * C))
    assert receding.omega == pytest.approx(0.5 * wave.omega, rel=1e-12)
    assert np.linalg.norm(receding.k) == pytest.approx(receding.omega / C, rel=1e-12)
    receding.validate()


def test_phase_is_invariant_under_boosts():
    rng = np.random.default_rng(17)
    for _ in range(10_000):
        direction = rng.standard_normal(3)
        if rng.uniform() < 0.5:
            wave = PlaneWave.luminal_wave(
                omega=rng.uniform(1e14, 1e16), direction=direction, phase0=rng.uniform(0, 2 * math.pi)
            )
        else:
            k = tuple(rng.uniform(-1e7, 1e7, size=3))
            wave = PlaneWave(k=k, omega=rng.uniform(-1e16, 1e16))
        b = Boost.from_velocity(rng.uniform(-0.99, 0.99) * C)
        ev = Event(
            t=rng.uniform(-1e-14, 1e-14),
            x=rng.uniform(-1e-6, 1e-6),
            y=rng.uniform(-1e-6, 1e-6),
            z=rng.uniform(-1e-6, 1e-6),
        )
        moved = lorentz_boost(ev, b)
        boosted = transform_plane_wave(wave, b)
        before = wave.phase(ev.t, ev.x, ev.y, ev.z)
        after = boosted.phase(moved.t, moved.x, moved.y, moved.z)
        scale = (
            abs(wave.omega * ev.t)
            + float(np.abs(np.asarray(wave.k)) @ np.abs([ev.x, ev.y, ev.z]))
            + abs(wave.phase0)
        )
        assert abs(after - before) <= 1e-10 * max(scale, 1e-300) * b.gamma**2


def test_acoustic_doppler():
    assert acoustic_doppler(440.0, 0.0, 0.0, 343.0) == 440.0
    assert acoustic_doppler(440.0, 171.5, 0.0, 343.0) == pytest.approx(880.0)
    with pytest.raises(DomainError):
        acoustic_doppler(440.0, 343.0, 0.0, 343.0)


def test_light_depends_only_on_relative_velocity_but_sound_does_not():
    f = 1.0e3
    c_sound = 343.0
    sound_source_moving = acoustic_doppler(f, 0.1 * c_sound, 0.0, c_sound)
    sound_observer_moving = acoustic_doppler(f, 0.0, 0.1 * c_sound, c_sound)
    assert sound_source_moving != pytest.approx(sound_observer_moving, rel=1e-6)

    light_source_moving = light_doppler(f, 0.1 * C, 0.0)
    light_observer_moving = light_doppler(f, 0.0, 0.1 * C)
    assert light_source_moving == pytest.approx(light_observer_moving, rel=1e-14)
