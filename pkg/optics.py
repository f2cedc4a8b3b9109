"""
optics.py

Dielectric response and radiation:
  - ε from the resonance sum (implemented literally, numerator odd in detuning)
  - phase velocity C/n with n = sqrt(ε·μ)
  - Fresnel drag, first-order form next to the exact relativistic composition
  - dipole transition rate and emitted intensity

The transition rate is written in Gaussian units; SI charges enter as
e²/(4πε₀).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import pandas as pd

from config import SI_CONSTANTS, PhysicalConstants
from errors import DomainError
from kinematics import compose_velocities

DIRECTIONS = ("emission", "absorption")


@dataclass(frozen=True)
class Medium:
    epsilon: float
    mu: float = 1.0
    n: float = field(init=False)

    def __post_init__(self):
        if not (self.epsilon > 0 and self.mu > 0):
            raise DomainError("epsilon and mu must be positive")
        object.__setattr__(self, "n", math.sqrt(self.epsilon * self.mu))

    @classmethod
    def from_index(cls, n: float, mu: float = 1.0) -> "Medium":
        if not n > 0:
            raise DomainError("refractive index must be positive")
        return cls(epsilon=n * n / mu, mu=mu)


@dataclass(frozen=True)
class ResonanceParams:
    oscillator_density: float
    omega_c: float
    m_osc: float
    tau_damp: float

    def __post_init__(self):
        for name in ("oscillator_density", "omega_c", "m_osc", "tau_damp"):
            if not getattr(self, name) >= 0:
                raise DomainError(f"{name} must be non-negative")


@dataclass(frozen=True)
class Transition:
    omega12: float
    r12: float
    photon_count: float = 0.0

    def __post_init__(self):
        if not self.omega12 > 0:
            raise DomainError("omega12 must be positive")
        if not self.r12 >= 0:
            raise DomainError("r12 must be non-negative")
        if not self.photon_count >= 0:
            raise DomainError("photon_count must be non-negative")


@dataclass(frozen=True)
class DragResult:
    approx: float
    exact: float
    drag_coefficient: float
    gap: float


@dataclass(frozen=True)
class TransitionRate:
    P12: float
    intensity: float


def epsilon_dispersion(
    omega_modes: Iterable[tuple[float, float]], params: ResonanceParams
) -> float:
    """
    ε = 1 + Σ_q 4π·n(q)·[ω(q) − ω_c] / (m·{4(ω(q) − ω_c)² + τ²·ω(q)⁴}).

    ``omega_modes`` is a list of (q, ω(q)); each mode carries the full
    ``oscillator_density``.
    """
    if params.m_osc == 0:
        raise DomainError("m_osc must be non-zero")
    eps = 1.0
    for _q, omega in omega_modes:
        detuning = omega - params.omega_c
        denom = params.m_osc * (4.0 * detuning**2 + params.tau_damp**2 * omega**4)
        if denom == 0:
            if params.oscillator_density == 0 or detuning == 0:
                continue
            raise DomainError("dispersion denominator vanishes")
        eps += 4.0 * math.pi * params.oscillator_density * detuning / denom
    return eps


def phase_velocity(medium: Medium, constants: PhysicalConstants = SI_CONSTANTS) -> float:
    return constants.C / medium.n


def gaussian_charge_squared(constants: PhysicalConstants = SI_CONSTANTS) -> float:
    """e² in Gaussian form, e²/(4πε₀), for SI-valued constants."""
    return constants.e**2 / (4.0 * math.pi * constants.eps0)


def fresnel_drag(
    medium: Medium, v_medium: float, constants: PhysicalConstants = SI_CONSTANTS
) -> DragResult:
    """
    Light speed in a medium moving at ``v_medium`` along the beam.

    ``approx`` is C/n + v(1 − 1/n²); ``exact`` composes C/n with the medium
    velocity relativistically. ``gap`` = exact − approx evaluated in closed
    form, −v(1 − 1/n²)·x/(1 + x) with x = v/(nC), so it stays accurate when
    both speeds agree to many digits.
    """
    C = constants.C
    if not abs(v_medium) < C:
        raise DomainError("v_medium must satisfy |v_medium| < C")
    n = medium.n
    u = C / n
    coefficient = 1.0 - 1.0 / n**2
    approx = u + v_medium * coefficient
    exact = float(compose_velocities(np.array([u, 0.0, 0.0]), -v_medium, constants)[0])
    x = v_medium / (n * C)
    gap = -v_medium * coefficient * x / (1.0 + x)
    return DragResult(approx=approx, exact=exact, drag_coefficient=coefficient, gap=gap)


def transition_rate(
    t: Transition,
    direction: str = "emission",
    constants: PhysicalConstants = SI_CONSTANTS,
) -> TransitionRate:
    """
    P12 = (4/3)·(e²/(ħC³))·ω³·|⟨1|r|2⟩|², scaled by n + 1 for emission and by
    n for absorption; intensity = P12·ħω.
    """
    if direction not in DIRECTIONS:
        raise DomainError(f"direction must be one of {DIRECTIONS}")
    base = (
        (4.0 / 3.0)
        * gaussian_charge_squared(constants)
        / (constants.hbar * constants.C**3)
        * t.omega12**3
        * t.r12**2
    )
    factor = t.photon_count + 1.0 if direction == "emission" else t.photon_count
    P12 = base * factor
    return TransitionRate(P12=P12, intensity=P12 * constants.hbar * t.omega12)


def dispersion_sweep(
    omegas: Iterable[float],
    params: ResonanceParams,
    mu: float = 1.0,
    constants: PhysicalConstants = SI_CONSTANTS,
) -> pd.DataFrame:
    """ε(ω), n and phase velocity over the given frequencies; NaN where ε·μ <= 0."""
    rows = []
    for omega in omegas:
        eps = epsilon_dispersion([(0.0, float(omega))], params)
        if eps * mu > 0:
            n = math.sqrt(eps * mu)
            v = constants.C / n
        else:
            n = v = math.nan
        rows.append({"omega": float(omega), "epsilon": eps, "n": n, "phase_velocity": v})
    return pd.DataFrame(rows, columns=["omega", "epsilon", "n", "phase_velocity"])
