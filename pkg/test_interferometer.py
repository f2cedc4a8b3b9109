import math
from dataclasses import replace

import numpy as np
import pytest

from config import SI_CONSTANTS
from errors import DomainError
from interferometer import (
    KINEMATICS,
    FizeauConfig,
    InterferometerConfig,
    arm_time_difference,
    ether_arm_times,
    fizeau_first_order,
    fizeau_fringe_shift,
    orientation_sweep,
    rest_frame_schedule,
    rotation_fringe_shift,
)
from kinematics import gamma_factor
from optics import Medium

C = SI_CONSTANTS.C

MICHELSON = InterferometerConfig(arm_length=11.0, wavelength=5.0e-7, ether_speed=3.0e4)
FIZEAU = FizeauConfig(
    tube_length=1.487, fluid_velocity=7.059, medium=Medium.from_index(1.333), wavelength=5.26e-7
)


def test_rest_frame_schedule():
    schedule = rest_frame_schedule(1.0)
    assert schedule.t2a == pytest.approx(2.0 / C)
    assert schedule.t2a == pytest.approx(6.67e-9, rel=1e-3)
    assert schedule.t1a == schedule.t1b == 1.0 / C
    assert schedule.t2a - schedule.t2b == 0.0

    zero = rest_frame_schedule(0.0)
    assert (zero.t1a, zero.t2a, zero.t1b, zero.t2b) == (0.0, 0.0, 0.0, 0.0)

    with pytest.raises(DomainError):
        rest_frame_schedule(-1.0)


def test_arm_times_at_rest():
    for kinematics in KINEMATICS:
        times = ether_arm_times(InterferometerConfig(1.0, 5e-7, 0.0, kinematics=kinematics))
        assert times.t_parallel == pytest.approx(2.0 / C, rel=1e-15)
        assert times.t_perpendicular == pytest.approx(2.0 / C, rel=1e-15)


def test_galilean_arm_ratio_is_gamma():
    times = ether_arm_times(InterferometerConfig(1.0, 5e-7, 0.5 * C))
    gamma = 2.0 / math.sqrt(3.0)
    assert times.t_parallel / times.t_perpendicular == pytest.approx(gamma, rel=1e-12)
    assert times.t_parallel == pytest.approx(2.0 / C * gamma**2, rel=1e-12)


def test_contracted_arms_take_equal_times():
    rng = np.random.default_rng(21)
    for _ in range(500):
        cfg = InterferometerConfig(
            arm_length=rng.uniform(0.1, 100.0),
            wavelength=5e-7,
            ether_speed=rng.uniform(0.0, 0.99) * C,
            orientation=rng.uniform(0.0, 2.0 * math.pi),
            kinematics="galilean_with_contraction",
        )
        times = ether_arm_times(cfg)
        assert times.t_parallel == pytest.approx(times.t_perpendicular, rel=1e-12)
        assert arm_time_difference(cfg) == 0.0


def test_arm_difference_matches_direct_subtraction_when_large():
    cfg = InterferometerConfig(1.0, 5e-7, 0.5 * C)
    times = ether_arm_times(cfg)
    assert arm_time_difference(cfg) == pytest.approx(times.t_parallel - times.t_perpendicular, rel=1e-12)


def test_lorentz_times_are_contracted_ether_times_on_the_moving_clock():
    rng = np.random.default_rng(5)
    for _ in range(200):
        speed = rng.uniform(0.0, 0.99) * C
        contracted = InterferometerConfig(
            arm_length=rng.uniform(0.1, 100.0),
            wavelength=5e-7,
            ether_speed=speed,
            orientation=rng.uniform(0.0, 2.0 * math.pi),
            kinematics="galilean_with_contraction",
        )
        lorentz = replace(contracted, kinematics="lorentz")
        gamma = gamma_factor(speed)
        ether = ether_arm_times(contracted)
        apparatus = ether_arm_times(lorentz)

        rest = 2.0 * contracted.arm_length / C
        assert ether.t_parallel == pytest.approx(rest * gamma, rel=1e-12)
        assert apparatus.t_parallel == pytest.approx(ether.t_parallel / gamma, rel=1e-12)
        assert apparatus.t_parallel == pytest.approx(rest, rel=1e-12)
        assert apparatus.t_perpendicular == pytest.approx(rest, rel=1e-12)
        assert arm_time_difference(lorentz) == 0.0


def test_only_rigid_arms_see_the_ether_wind():
    for angle in np.linspace(0.0, math.pi / 4.0, 5)[:-1]:
        rigid = replace(MICHELSON, ether_speed=0.1 * C, orientation=float(angle))
        assert arm_time_difference(rigid) > 0.0
        for kinematics in ("galilean_with_contraction", "lorentz"):
            assert arm_time_difference(replace(rigid, kinematics=kinematics)) == 0.0


def test_config_guards():
    with pytest.raises(DomainError):
        InterferometerConfig(arm_length=0.0, wavelength=5e-7)
    with pytest.raises(DomainError):
        InterferometerConfig(arm_length=1.0, wavelength=5e-7, kinematics="aether")
    with pytest.raises(DomainError):
        ether_arm_times(InterferometerConfig(1.0, 5e-7, C))


def test_michelson_rotation_shift():
    assert rotation_fringe_shift(replace(MICHELSON, ether_speed=0.0)) == 0.0
    shift = rotation_fringe_shift(MICHELSON)
    assert shift == pytest.approx(0.44, abs=0.01)
    beta = MICHELSON.ether_speed / C
    assert shift == pytest.approx(2.0 * MICHELSON.arm_length / MICHELSON.wavelength * beta**2, rel=1e-6)


def test_null_result_kinematics():
    for kinematics in ("lorentz", "galilean_with_contraction"):
        cfg = replace(MICHELSON, kinematics=kinematics)
        for angle in np.linspace(0.0, 2.0 * math.pi, 36, endpoint=False):
            assert abs(rotation_fringe_shift(replace(cfg, orientation=float(angle)))) < 1e-12


def test_shift_is_antisymmetric_under_quarter_turn():
    for kinematics in KINEMATICS:
        cfg = replace(MICHELSON, kinematics=kinematics, ether_speed=0.2 * C)
        for angle in np.linspace(0.0, math.pi, 7):
            before = rotation_fringe_shift(replace(cfg, orientation=float(angle)))
            after = rotation_fringe_shift(replace(cfg, orientation=float(angle) + math.pi / 2.0))
            assert after == pytest.approx(-before, rel=1e-9, abs=1e-12)


def test_galilean_shift_is_second_order_in_speed():
    speeds = np.logspace(2, 5, 7)
    shifts = np.array([rotation_fringe_shift(replace(MICHELSON, ether_speed=float(v))) for v in speeds])
    slope = np.polyfit(np.log(speeds), np.log(shifts), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.05)


def _fizeau_oracle(cfg: FizeauConfig) -> float:
    n, v = cfg.medium.n, cfg.fluid_velocity
    u_plus = (C / n + v) / (1.0 + v / (n * C))
    u_minus = (C / n - v) / (1.0 - v / (n * C))
    path = 2.0 * cfg.tube_length
    return C * (path / u_minus - path / u_plus) / cfg.wavelength


def test_fizeau_shift():
    shift = fizeau_fringe_shift(FIZEAU)
    assert shift == pytest.approx(_fizeau_oracle(FIZEAU), rel=1e-2)
    assert shift == pytest.approx(0.2067, rel=1e-2)
    assert shift == pytest.approx(fizeau_first_order(FIZEAU), rel=1e-6)


def test_fizeau_symmetries():
    assert fizeau_fringe_shift(replace(FIZEAU, fluid_velocity=0.0)) == 0.0
    vacuum = replace(FIZEAU, medium=Medium(epsilon=1.0))
    assert abs(fizeau_fringe_shift(vacuum)) < 1e-6
    for v in (7.059, 250.0, 3000.0):
        forward = fizeau_fringe_shift(replace(FIZEAU, fluid_velocity=v))
        backward = fizeau_fringe_shift(replace(FIZEAU, fluid_velocity=-v))
        assert backward == pytest.approx(-forward, rel=1e-6)


def test_fizeau_rejects_fluid_faster_than_light_in_medium():
    with pytest.raises(DomainError):
        fizeau_fringe_shift(replace(FIZEAU, fluid_velocity=C))


def test_orientation_sweep_frame():
    angles = np.linspace(0.0, math.pi, 5)
    frame = orientation_sweep(MICHELSON, angles)
    assert list(frame.columns) == ["angle_rad", "delta_t_s", "fringe_shift"]
    assert len(frame) == 5
    assert frame.loc[0, "fringe_shift"] == pytest.approx(rotation_fringe_shift(MICHELSON))
    assert frame.loc[0, "delta_t_s"] > 0 > frame.loc[2, "delta_t_s"]
