"""
wave_covariance.py

Finite-difference check of the 1+1 dimensional scalar wave equation

    ∂²φ/∂x² − (1/C²) ∂²φ/∂t² = 0

for known analytic fields, before and after a change of frame. The
transformed field is evaluated by analytic substitution of the inverse
coordinate map, so no interpolation error enters the comparison.

Grids are indexed ``values[i_t, i_x]``. Residuals use second-order central
differences on interior points; norms are root-mean-square over the interior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

import numpy as np

from config import SI_CONSTANTS, PhysicalConstants
from errors import DomainError
from kinematics import (
    Boost,
    galilean_coordinates,
    gamma_factor,
    lorentz_coordinates,
    relativistic_doppler,
)

TRANSFORM_KINDS = ("lorentz", "voigt", "galilean")
MIN_GRID_POINTS = 5


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridGeometry:
    n_t: int
    n_x: int
    dt: float
    dx: float
    t0: float = 0.0
    x0: float = 0.0

    def __post_init__(self):
        if not (self.dt > 0 and self.dx > 0):
            raise DomainError("dt and dx must be positive")
        if self.n_t < 0 or self.n_x < 0:
            raise DomainError("grid dimensions must be non-negative")

    @classmethod
    def for_wavelength(
        cls,
        wavelength: float,
        points_per_wavelength: int,
        constants: PhysicalConstants = SI_CONSTANTS,
        cfl: float = 0.5,
    ) -> "GridGeometry":
        """One wavelength of interior points in x; time step cfl·dx/C."""
        if not wavelength > 0:
            raise DomainError("wavelength must be positive")
        dx = wavelength / points_per_wavelength
        n = points_per_wavelength + 2
        return cls(n_t=n, n_x=n, dt=cfl * dx / constants.C, dx=dx)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        t = self.t0 + self.dt * np.arange(self.n_t)
        x = self.x0 + self.dx * np.arange(self.n_x)
        return t, x


@dataclass
class FieldGrid:
    values: np.ndarray
    dt: float
    dx: float
    origin: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if not (self.dt > 0 and self.dx > 0):
            raise DomainError("dt and dx must be positive")
        if self.values.ndim != 2:
            raise DomainError("field grid must be two-dimensional (t, x)")
        if min(self.values.shape) < MIN_GRID_POINTS:
            raise DomainError(f"grid needs at least {MIN_GRID_POINTS} points per axis")


@dataclass(frozen=True)
class PlaneWave:
    k: tuple[float, float, float]
    omega: float
    amplitude: float = 1.0
    phase0: float = 0.0
    luminal: bool = False

    @classmethod
    def luminal_wave(
        cls,
        omega: float,
        direction: Iterable[float] = (1.0, 0.0, 0.0),
        constants: PhysicalConstants = SI_CONSTANTS,
        amplitude: float = 1.0,
        phase0: float = 0.0,
    ) -> "PlaneWave":
        n = np.asarray(tuple(direction), dtype=float)
        n = n / np.linalg.norm(n)
        k = tuple(float(c) for c in (omega / constants.C) * n)
        return cls(k=k, omega=float(omega), amplitude=amplitude, phase0=phase0, luminal=True)

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / float(np.linalg.norm(self.k))

    def validate(self, constants: PhysicalConstants = SI_CONSTANTS) -> None:
        if not self.luminal:
            return
        k_mag = float(np.linalg.norm(self.k))
        expected = abs(self.omega) / constants.C
        if abs(k_mag - expected) > 1e-12 * max(expected, 1e-300):
            raise DomainError("luminal wave must satisfy |k| = omega/C")

    def phase(self, t, x, y=0.0, z=0.0):
        kx, ky, kz = self.k
        return kx * x + ky * y + kz * z - self.omega * t + self.phase0

    def __call__(self, t, x):
        return self.amplitude * np.cos(self.phase(t, x))


@dataclass(frozen=True)
class PolynomialField:
    """φ = Σ c·(t − t0)^i·(x − x0)^j with ``coefficients[(i, j)] = c``."""

    coefficients: dict[tuple[int, int], float] = field(default_factory=dict)

    def evaluate(self, t, x, origin: tuple[float, float]):
        tau = np.asarray(t, dtype=float) - origin[0]
        xi = np.asarray(x, dtype=float) - origin[1]
        out = np.zeros(np.broadcast(tau, xi).shape)
        for (i, j), c in self.coefficients.items():
            out = out + c * tau**i * xi**j
        return out


FieldSource = Union[PlaneWave, PolynomialField, Callable[[np.ndarray, np.ndarray], np.ndarray]]


@dataclass
class Residual:
    residual_grid: np.ndarray
    l2_norm: float


@dataclass
class RefinementStudy:
    kind: str
    levels: list[int]
    norms: list[float]
    orders: list[float]
    extrapolated_norm: float


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def sample_field(source: FieldSource, geometry: GridGeometry) -> FieldGrid:
    if geometry.n_t == 0 or geometry.n_x == 0:
        raise DomainError("cannot sample a zero-sized grid")
    t, x = geometry.axes()
    tt, xx = np.meshgrid(t, x, indexing="ij")
    origin = (geometry.t0, geometry.x0)
    if isinstance(source, PolynomialField):
        values = source.evaluate(tt, xx, origin)
    else:
        values = np.broadcast_to(source(tt, xx), tt.shape)
    return FieldGrid(values=np.array(values, dtype=float), dt=geometry.dt, dx=geometry.dx, origin=origin)


def dalembertian_residual(
    grid: FieldGrid, constants: PhysicalConstants = SI_CONSTANTS
) -> Residual:
    v = grid.values
    if min(v.shape) < MIN_GRID_POINTS:
        raise DomainError(f"grid needs at least {MIN_GRID_POINTS} points per axis")
    centre = v[1:-1, 1:-1]
    d2x = (v[1:-1, 2:] - 2.0 * centre + v[1:-1, :-2]) / grid.dx**2
    d2t = (v[2:, 1:-1] - 2.0 * centre + v[:-2, 1:-1]) / grid.dt**2
    residual = d2x - d2t / constants.C**2
    l2_norm = float(np.sqrt(np.mean(residual * residual)))
    return Residual(residual_grid=residual, l2_norm=l2_norm)


def inverse_coordinates(
    kind: str, t_prime, x_prime, v: float, constants: PhysicalConstants = SI_CONSTANTS
):
    """Unprimed (t, x) of the primed sample points for each transform kind."""
    if kind == "lorentz":
        return lorentz_coordinates(t_prime, x_prime, -v, constants)
    if kind == "voigt":
        # inverse of t′ = t − vx/C², x′ = x − vt
        g2 = gamma_factor(v, constants) ** 2
        return g2 * (t_prime + v * x_prime / constants.C**2), g2 * (x_prime + v * t_prime)
    if kind == "galilean":
        return galilean_coordinates(t_prime, x_prime, -v, constants)
    raise DomainError(f"unknown transform kind {kind!r}; expected one of {TRANSFORM_KINDS}")


def transformed_field(
    wave: PlaneWave, v: float, kind: str, constants: PhysicalConstants = SI_CONSTANTS
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    def field_in_moving_frame(t_prime, x_prime):
        t, x = inverse_coordinates(kind, t_prime, x_prime, v, constants)
        return wave(t, x)

    return field_in_moving_frame


def covariance_comparison(
    wave: PlaneWave,
    v: float,
    geometry: GridGeometry,
    kinds: Iterable[str] = TRANSFORM_KINDS,
    constants: PhysicalConstants = SI_CONSTANTS,
) -> dict[str, float]:
    """d'Alembertian residual norm of the wave as seen from a frame moving at v."""
    wave.validate(constants)
    norms: dict[str, float] = {}
    for kind in kinds:
        grid = sample_field(transformed_field(wave, v, kind, constants), geometry)
        norms[kind] = dalembertian_residual(grid, constants).l2_norm
    return norms


def refinement_study(
    wave: PlaneWave,
    v: float,
    kind: str,
    levels: Iterable[int] = (64, 128, 256),
    constants: PhysicalConstants = SI_CONSTANTS,
    cfl: float = 0.5,
) -> RefinementStudy:
    """
    Residual norms on grids with ``levels`` points per source wavelength,
    the measured order between consecutive levels, and a second-order
    Richardson extrapolation of the norm to dx → 0.
    """
    levels = [int(n) for n in levels]
    if len(levels) < 2:
        raise DomainError("a refinement study needs at least two levels")
    if any(fine <= coarse for coarse, fine in zip(levels, levels[1:])):
        raise DomainError("refinement levels must be strictly increasing")
    norms: list[float] = []
    for points in levels:
        geometry = GridGeometry.for_wavelength(wave.wavelength, points, constants, cfl)
        norms.append(covariance_comparison(wave, v, geometry, (kind,), constants)[kind])

    orders = []
    for (n_coarse, coarse), (n_fine, fine) in zip(
        zip(levels, norms), zip(levels[1:], norms[1:])
    ):
        if coarse > 0 and fine > 0:
            orders.append(math.log(coarse / fine) / math.log(n_fine / n_coarse))
        else:
            orders.append(math.nan)

    ratio = (levels[-1] / levels[-2]) ** 2
    extrapolated = norms[-1] + (norms[-1] - norms[-2]) / (ratio - 1.0)
    return RefinementStudy(
        kind=kind, levels=levels, norms=norms, orders=orders, extrapolated_norm=extrapolated
    )


def transform_plane_wave(wave: PlaneWave, b: Boost) -> PlaneWave:
    """Boost (ω/C, k) as a four-vector; the phase k·x − ωt is invariant."""
    C = b.constants.C
    wave.validate(b.constants)
    kx, ky, kz = wave.k
    omega = b.gamma * (wave.omega - b.v * kx)
    kx_new = b.gamma * (kx - b.v * wave.omega / C**2)
    return PlaneWave(
        k=(kx_new, ky, kz),
        omega=omega,
        amplitude=wave.amplitude,
        phase0=wave.phase0,
        luminal=wave.luminal,
    )


def acoustic_doppler(f: float, v_source: float, v_observer: float, c_sound: float) -> float:
    """Velocities are positive when moving toward the counterpart."""
    if not c_sound > 0:
        raise DomainError("c_sound must be positive")
    if not abs(v_source) < c_sound:
        raise DomainError("v_source must satisfy |v_source| < c_sound")
    return f * (c_sound + v_observer) / (c_sound - v_source)


def light_doppler(
    f: float,
    v_source: float,
    v_observer: float,
    constants: PhysicalConstants = SI_CONSTANTS,
) -> float:
    """Only the relativistic closing speed of source and observer matters."""
    for name, value in (("v_source", v_source), ("v_observer", v_observer)):
        if not abs(value) < constants.C:
            raise DomainError(f"{name} must satisfy |{name}| < C")
    closing = (v_source + v_observer) / (1.0 + v_source * v_observer / constants.C**2)
    return relativistic_doppler(f, closing / constants.C)
