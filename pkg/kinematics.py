"""
kinematics.py

Exact special-relativity kinematics along the x axis: gamma factor, boosts
(Lorentz and the gamma-less Voigt substitution), velocity composition, the
paired dilation/contraction relations with their product identities, the
phase velocity of simultaneity and the muon passage.

All public functions take SI inputs and a ``PhysicalConstants`` profile
(``C = 1`` natural units are allowed). Scalars and numpy arrays are both
accepted where noted; nothing here keeps state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from config import SI_CONSTANTS, PhysicalConstants
from errors import DomainError

# Slack on |u| <= C for vectors built as C * unit_vector.
_LUMINAL_SLACK = 1e-12


class _InfiniteVelocity:
    """Tagged stand-in for an unbounded speed; serialises as ``"inf"``."""

    _instance: "_InfiniteVelocity | None" = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __float__(self) -> float:
        return math.inf

    def __str__(self) -> str:
        return "inf"

    def __repr__(self) -> str:
        return "INFINITE_VELOCITY"

    def __reduce__(self):
        return (_InfiniteVelocity, ())


INFINITE_VELOCITY = _InfiniteVelocity()


def is_infinite(value: object) -> bool:
    return value is INFINITE_VELOCITY


def _check_subluminal(v, constants: PhysicalConstants, name: str = "v") -> None:
    if np.any(~np.isfinite(v)) or np.any(np.abs(v) >= constants.C):
        raise DomainError(f"{name} must satisfy |{name}| < C (C = {constants.C:g} m/s)")


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Event:
    t: float
    x: float
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.t, self.x, self.y, self.z)):
            raise DomainError("event coordinates must be finite")


def interval(ev: Event, constants: PhysicalConstants = SI_CONSTANTS) -> float:
    """Quadratic form C²t² − x² − y² − z²."""
    return (constants.C * ev.t) ** 2 - ev.x**2 - ev.y**2 - ev.z**2


@dataclass(frozen=True)
class Boost:
    v: float
    gamma: float
    rapidity: float
    constants: PhysicalConstants = field(default=SI_CONSTANTS, compare=False, repr=False)

    def __post_init__(self):
        C = self.constants.C
        _check_subluminal(self.v, self.constants)
        expected_gamma = 1.0 / math.sqrt(1.0 - (self.v / C) ** 2)
        if abs(self.gamma - expected_gamma) > 1e-12 * expected_gamma:
            raise DomainError("gamma must equal 1/sqrt(1 - v²/C²)")
        beta = self.v / C
        if abs(math.tanh(self.rapidity) - beta) > 1e-12 * max(abs(beta), 1e-300):
            raise DomainError("tanh(rapidity) must equal v/C")

    @classmethod
    def from_velocity(
        cls, v: float, constants: PhysicalConstants = SI_CONSTANTS
    ) -> "Boost":
        _check_subluminal(v, constants)
        beta = v / constants.C
        return cls(
            v=float(v),
            gamma=1.0 / math.sqrt(1.0 - beta * beta),
            rapidity=math.atanh(beta),
            constants=constants,
        )

    @classmethod
    def from_rapidity(
        cls, rapidity: float, constants: PhysicalConstants = SI_CONSTANTS
    ) -> "Boost":
        return cls.from_velocity(constants.C * math.tanh(rapidity), constants)

    @property
    def beta(self) -> float:
        return self.v / self.constants.C

    def inverse(self) -> "Boost":
        return Boost(v=-self.v, gamma=self.gamma, rapidity=-self.rapidity, constants=self.constants)


@dataclass(frozen=True)
class IntervalPair:
    dilated: float
    contracted: float
    proper: float


@dataclass(frozen=True)
class LengthPair:
    tilde_l: float
    bar_l: float
    rest: float
    gamma: float

    @property
    def primed(self) -> float:
        """l′ = rest/γ; its square equals tilde_l · bar_l."""
        return self.rest / self.gamma

    @property
    def reconstructed_rest(self) -> float:
        return self.gamma * self.bar_l


@dataclass(frozen=True)
class MuonPassage:
    rest_length: float
    boosted_length: float
    surviving_fraction: float


@dataclass(frozen=True)
class RotationAngle:
    alpha: float
    tanh_alpha: float
    gamma_beta: float


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def gamma_factor(v, constants: PhysicalConstants = SI_CONSTANTS):
    """1/sqrt(1 − v²/C²). Accepts a scalar or an array of velocities."""
    _check_subluminal(v, constants)
    beta = np.asarray(v, dtype=float) / constants.C
    gamma = 1.0 / np.sqrt(1.0 - beta * beta)
    return float(gamma) if gamma.ndim == 0 else gamma


def lorentz_coordinates(t, x, v: float, constants: PhysicalConstants = SI_CONSTANTS):
    """(t′, x′) = (γ(t − vx/C²), γ(x − vt)) on scalars or arrays."""
    gamma = gamma_factor(v, constants)
    C2 = constants.C**2
    return gamma * (t - v * x / C2), gamma * (x - v * t)


def voigt_coordinates(t, x, v: float, constants: PhysicalConstants = SI_CONSTANTS):
    """(t′, x′) = (t − vx/C², x − vt), without gamma."""
    _check_subluminal(v, constants)
    return t - v * x / constants.C**2, x - v * t


def galilean_coordinates(t, x, v: float, constants: PhysicalConstants = SI_CONSTANTS):
    _check_subluminal(v, constants)
    return t, x - v * t


def lorentz_boost(ev: Event, b: Boost) -> Event:
    t_new, x_new = lorentz_coordinates(ev.t, ev.x, b.v, b.constants)
    return Event(t=float(t_new), x=float(x_new), y=ev.y, z=ev.z)


def voigt_transform(
    ev: Event, v: float, constants: PhysicalConstants = SI_CONSTANTS
) -> Event:
    t_new, x_new = voigt_coordinates(ev.t, ev.x, v, constants)
    return Event(t=float(t_new), x=float(x_new), y=ev.y, z=ev.z)


def collinear_velocity_addition(
    u, v: float, constants: PhysicalConstants = SI_CONSTANTS
):
    """Velocity u seen from a frame moving at v along the same axis."""
    _check_subluminal(v, constants)
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(u) > constants.C * (1.0 + _LUMINAL_SLACK)):
        raise DomainError("u must satisfy |u| <= C")
    result = (u - v) / (1.0 - u * v / constants.C**2)
    return float(result) if result.ndim == 0 else result


def compose_velocities(u, v, constants: PhysicalConstants = SI_CONSTANTS) -> np.ndarray:
    """
    Transform velocity vector(s) u (shape (3,) or (..., 3)) into the frame
    moving at speed v along x. v is a scalar or an array matching u[..., 0].
    Transverse components carry the 1/γ factor.
    """
    _check_subluminal(v, constants)
    u = np.asarray(u, dtype=float)
    if u.ndim == 0 or u.shape[-1] != 3:
        raise DomainError("u must be a 3-vector or an array of 3-vectors")
    C = constants.C
    speed = np.linalg.norm(u, axis=-1)
    if np.any(~np.isfinite(speed)) or np.any(speed > C * (1.0 + _LUMINAL_SLACK)):
        raise DomainError("u must satisfy |u| <= C")

    v = np.asarray(v, dtype=float)
    beta = v / C
    gamma = 1.0 / np.sqrt((1.0 - beta) * (1.0 + beta))
    denom = 1.0 - u[..., 0] * v / C**2
    out = np.empty_like(u)
    out[..., 0] = (u[..., 0] - v) / denom
    out[..., 1] = u[..., 1] / (gamma * denom)
    out[..., 2] = u[..., 2] / (gamma * denom)
    return out


def compose_boosts(first: Boost, second: Boost) -> Boost:
    """Boost by ``first`` then by ``second`` along x; rapidities add."""
    constants = first.constants
    v = collinear_velocity_addition(first.v, -second.v, constants)
    return Boost.from_velocity(v, constants)


def time_dilation_pair(
    dt: float, v: float, constants: PhysicalConstants = SI_CONSTANTS
) -> IntervalPair:
    if not dt > 0:
        raise DomainError("dt must be positive")
    gamma = gamma_factor(v, constants)
    return IntervalPair(dilated=gamma * dt, contracted=dt / gamma, proper=float(dt))


def length_contraction_pair(
    l: float, v: float, constants: PhysicalConstants = SI_CONSTANTS
) -> LengthPair:
    if not l > 0:
        raise DomainError("l must be positive")
    gamma = gamma_factor(v, constants)
    # tilde_l: ends read at equal moving-frame time; bar_l: origin riding one end.
    # Both reduce to l/γ.
    tilde_l = gamma * (1.0 - (v / constants.C) ** 2) * l
    bar_l = l / gamma
    return LengthPair(tilde_l=tilde_l, bar_l=bar_l, rest=float(l), gamma=gamma)


def simultaneity_phase_velocity(
    v: float, constants: PhysicalConstants = SI_CONSTANTS
) -> "float | _InfiniteVelocity":
    """Speed C²/v of the moving frame's "now" surface; unbounded at v = 0."""
    if not math.isfinite(v) or abs(v) > constants.C:
        raise DomainError("v must satisfy |v| <= C")
    if v == 0:
        return INFINITE_VELOCITY
    return constants.C**2 / v


def muon_penetration(
    tau0: float,
    gamma: float,
    depth: float,
    constants: PhysicalConstants = SI_CONSTANTS,
    half_life: bool = False,
) -> MuonPassage:
    """
    Decay length at rest (τ·C) and in the ground frame (γ·τ·C), plus the
    fraction surviving ``depth``. τ is a mean lifetime (exp(−d/L)) unless
    ``half_life`` is set, in which case the fraction is 2^(−d/L).
    """
    if not tau0 > 0:
        raise DomainError("tau0 must be positive")
    if not gamma >= 1:
        raise DomainError("gamma must be >= 1")
    if not depth >= 0:
        raise DomainError("depth must be non-negative")
    rest_length = tau0 * constants.C
    boosted_length = gamma * rest_length
    ratio = depth / boosted_length
    fraction = 2.0 ** (-ratio) if half_life else math.exp(-ratio)
    return MuonPassage(
        rest_length=rest_length,
        boosted_length=boosted_length,
        surviving_fraction=fraction,
    )


def relativistic_doppler(f: float, beta: float) -> float:
    """Received frequency for source and observer closing at β (β < 0 receding)."""
    if not -1.0 < beta < 1.0:
        raise DomainError("beta must satisfy |beta| < 1")
    return f * math.sqrt((1.0 + beta) / (1.0 - beta))


def imaginary_rotation_angle(
    v: float, constants: PhysicalConstants = SI_CONSTANTS
) -> RotationAngle:
    """
    Hyperbolic angle of the boost. ``gamma_beta`` is the γ-bearing
    variant γ·v/C; it is reported for comparison only.
    """
    b = Boost.from_velocity(v, constants)
    return RotationAngle(
        alpha=b.rapidity,
        tanh_alpha=math.tanh(b.rapidity),
        gamma_beta=b.gamma * b.beta,
    )
