"""
interferometer.py

Michelson-Morley and Fizeau set-ups reduced to light traversal times.

Three kinematics are compared for the Michelson apparatus moving through a
stationary ether at ``ether_speed`` along x:

  galilean_ether             light travels at C relative to the ether
  galilean_with_contraction  as above, arm components along the wind shrink by 1/γ
  lorentz                    contracted arms, times read on the moving apparatus clock (1/γ)

A round trip along an arm with components (a, b) (a along the wind) takes
(2/C)·γ²·sqrt(a² + b²/γ²). Arm time differences are formed from that
expression without subtracting two nearly equal times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np
import pandas as pd

from config import SI_CONSTANTS, PhysicalConstants
from errors import DomainError
from kinematics import gamma_factor
from optics import Medium, fresnel_drag

KINEMATICS = ("galilean_ether", "galilean_with_contraction", "lorentz")
# ρ: fraction of the 1/γ length contraction applied along the wind
CONTRACTION = {"galilean_ether": 0.0, "galilean_with_contraction": 1.0, "lorentz": 1.0}


@dataclass(frozen=True)
class InterferometerConfig:
    arm_length: float
    wavelength: float
    ether_speed: float = 0.0
    orientation: float = 0.0
    kinematics: str = "galilean_ether"

    def __post_init__(self):
        if not (self.arm_length > 0 and self.wavelength > 0):
            raise DomainError("arm_length and wavelength must be positive")
        if not self.ether_speed >= 0:
            raise DomainError("ether_speed must be non-negative")
        if not math.isfinite(self.orientation):
            raise DomainError("orientation must be finite")
        if self.kinematics not in KINEMATICS:
            raise DomainError(f"kinematics must be one of {KINEMATICS}")

    def validate(self, constants: PhysicalConstants = SI_CONSTANTS) -> None:
        if not self.ether_speed < constants.C:
            raise DomainError("ether_speed must satisfy 0 <= ether_speed < C")


@dataclass(frozen=True)
class FizeauConfig:
    tube_length: float
    fluid_velocity: float
    medium: Medium
    wavelength: float

    def __post_init__(self):
        if not (self.tube_length > 0 and self.wavelength > 0):
            raise DomainError("tube_length and wavelength must be positive")

    def validate(self, constants: PhysicalConstants = SI_CONSTANTS) -> None:
        if not abs(self.fluid_velocity) < constants.C / self.medium.n:
            raise DomainError("fluid_velocity must satisfy |fluid_velocity| < C/n")


@dataclass(frozen=True)
class RestFrameSchedule:
    t1a: float
    t2a: float
    t1b: float
    t2b: float


@dataclass(frozen=True)
class ArmTimes:
    """Round-trip times of arm 1 (at ``orientation``) and arm 2 (90° further).

    At orientation 0 arm 1 lies along the wind, hence the field names.
    """

    t_parallel: float
    t_perpendicular: float


def rest_frame_schedule(l: float, constants: PhysicalConstants = SI_CONSTANTS) -> RestFrameSchedule:
    """Mirror arrival times with the apparatus at rest: out at l/C, back at 2l/C."""
    if not l >= 0:
        raise DomainError("l must be non-negative")
    out = l / constants.C
    back = 2.0 * l / constants.C
    return RestFrameSchedule(t1a=out, t2a=back, t1b=out, t2b=back)


def _beta_gamma(cfg: InterferometerConfig, constants: PhysicalConstants) -> tuple[float, float]:
    cfg.validate(constants)
    return cfg.ether_speed / constants.C, gamma_factor(cfg.ether_speed, constants)


def _along_wind_scale(cfg: InterferometerConfig, beta: float) -> float:
    """sqrt(1 − ρβ²): 1 for a rigid arm, 1/γ for a fully contracted one."""
    return math.sqrt(1.0 - CONTRACTION[cfg.kinematics] * beta * beta)


def _arm_components(cfg: InterferometerConfig, angle: float, beta: float) -> tuple[float, float]:
    a = cfg.arm_length * math.cos(angle) * _along_wind_scale(cfg, beta)
    b = cfg.arm_length * math.sin(angle)
    return a, b


def _apparatus_rate(cfg: InterferometerConfig, gamma: float) -> float:
    # ether-frame durations read by the moving apparatus clock are shorter by γ
    return gamma if cfg.kinematics == "lorentz" else 1.0


def _round_trip(cfg: InterferometerConfig, angle: float, constants: PhysicalConstants) -> float:
    beta, gamma = _beta_gamma(cfg, constants)
    a, b = _arm_components(cfg, angle, beta)
    ether_time = 2.0 / constants.C * gamma**2 * math.sqrt(a * a + b * b / gamma**2)
    return ether_time / _apparatus_rate(cfg, gamma)


def ether_arm_times(cfg: InterferometerConfig, constants: PhysicalConstants = SI_CONSTANTS) -> ArmTimes:
    return ArmTimes(
        t_parallel=_round_trip(cfg, cfg.orientation, constants),
        t_perpendicular=_round_trip(cfg, cfg.orientation + math.pi / 2.0, constants),
    )


def arm_time_difference(
    cfg: InterferometerConfig, constants: PhysicalConstants = SI_CONSTANTS
) -> float:
    """
    Δt = t(arm 1) − t(arm 2) in cancellation-free form.

    With S = a² + b²/γ² per arm, S₁ − S₂ = l²·cos(2θ)·(k − 1/γ²), where
    k = 1 − ρβ² is the squared along-wind scale. Then k − 1/γ² = β²(1 − ρ),
    which vanishes identically once the arm contracts fully (ρ = 1).
    """
    beta, gamma = _beta_gamma(cfg, constants)
    l = cfg.arm_length
    theta = cfg.orientation
    excess = beta * beta * (1.0 - CONTRACTION[cfg.kinematics])
    s_diff = l * l * math.cos(2.0 * theta) * excess
    a1, b1 = _arm_components(cfg, theta, beta)
    a2, b2 = _arm_components(cfg, theta + math.pi / 2.0, beta)
    root_sum = math.sqrt(a1 * a1 + b1 * b1 / gamma**2) + math.sqrt(a2 * a2 + b2 * b2 / gamma**2)
    ether_delta = 2.0 / constants.C * gamma**2 * s_diff / root_sum
    return ether_delta / _apparatus_rate(cfg, gamma)


def rotation_fringe_shift(
    cfg: InterferometerConfig, constants: PhysicalConstants = SI_CONSTANTS
) -> float:
    """Fringes passing when the apparatus is turned by 90°: C·(Δt(θ) − Δt(θ+90°))/λ."""
    before = arm_time_difference(cfg, constants)
    after = arm_time_difference(replace(cfg, orientation=cfg.orientation + math.pi / 2.0), constants)
    return constants.C * (before - after) / cfg.wavelength


def fizeau_fringe_shift(cfg: FizeauConfig, constants: PhysicalConstants = SI_CONSTANTS) -> float:
    """
    Two beams each cross both tubes (path 2L), one with the flow and one
    against it. Signal speeds are the exact relativistic compositions.
    """
    cfg.validate(constants)
    v = cfg.fluid_velocity
    u_plus = fresnel_drag(cfg.medium, v, constants).exact
    u_minus = fresnel_drag(cfg.medium, -v, constants).exact
    path = 2.0 * cfg.tube_length
    delta_t = path * (u_plus - u_minus) / (u_plus * u_minus)
    return constants.C * delta_t / cfg.wavelength


def fizeau_first_order(cfg: FizeauConfig, constants: PhysicalConstants = SI_CONSTANTS) -> float:
    """4·L·v·(n² − 1)/(C·λ)."""
    cfg.validate(constants)
    n = cfg.medium.n
    return 4.0 * cfg.tube_length * cfg.fluid_velocity * (n * n - 1.0) / (constants.C * cfg.wavelength)


def orientation_sweep(
    cfg: InterferometerConfig,
    angles: Iterable[float],
    constants: PhysicalConstants = SI_CONSTANTS,
) -> pd.DataFrame:
    rows = []
    for angle in np.asarray(list(angles), dtype=float):
        turned = replace(cfg, orientation=float(angle))
        rows.append(
            {
                "angle_rad": float(angle),
                "delta_t_s": arm_time_difference(turned, constants),
                "fringe_shift": rotation_fringe_shift(turned, constants),
            }
        )
    return pd.DataFrame(rows, columns=["angle_rad", "delta_t_s", "fringe_shift"])
