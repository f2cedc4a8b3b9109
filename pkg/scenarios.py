"""
scenarios.py

Scenario files, their validation, dispatch and result tables.

A scenario file is flat ``key = value`` text, one entry per line, ``#``
starting a comment. ``kind`` selects the computation; ``seed`` and
``output`` are optional; every other key is a parameter of the kind.
Comma-separated values give lists. Example:

    kind = muon
    tau0 = 2.2e-6
    gamma = 100
    depth = 10000

Each kind has a pydantic parameter model (unknown keys are rejected) whose
bounds are checked against the active constants profile passed in through
the validation context.

The covariance, chain, dispersion and michelson kinds take an optional
``export`` path (chain also ``dispersion_export``) for a side CSV of the
residual grid, trajectory, sweep or orientation sweep.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Annotated, Any, Callable, Literal

import numpy as np
import pandas as pd
from pydantic import (
    AfterValidator,
    BaseModel,
    BeforeValidator,
    ConfigDict,
    ValidationError,
    ValidationInfo,
    model_validator,
)

from config import (
    ARTIFACT_VERSION,
    FLOAT_DIGITS,
    SI_CONSTANTS,
    PhysicalConstants,
    Settings,
    check_refinement_levels,
)
from dynamide_lattice import (
    DynamideChainConfig,
    Mode,
    analytic_dispersion,
    g2_consistency,
    mode_amplitudes,
    momentum_spectrum,
    photon_cross_section,
    photon_uncertainty,
    simulate_chain,
    theta_from_cell,
)
from errors import DomainError, ScenarioParseError, ScenarioRunError, ScenarioValidationError
from exports import (
    write_chain_dispersion,
    write_chain_trajectory,
    write_dispersion_sweep,
    write_orientation_sweep,
    write_residual_grid,
)
from interferometer import (
    FizeauConfig,
    InterferometerConfig,
    arm_time_difference,
    ether_arm_times,
    fizeau_first_order,
    fizeau_fringe_shift,
    orientation_sweep,
    rotation_fringe_shift,
)
from kinematics import (
    Boost,
    Event,
    compose_velocities,
    interval,
    is_infinite,
    length_contraction_pair,
    lorentz_boost,
    muon_penetration,
    simultaneity_phase_velocity,
    time_dilation_pair,
    voigt_transform,
)
from optics import (
    Medium,
    ResonanceParams,
    Transition,
    dispersion_sweep,
    fresnel_drag,
    transition_rate,
)
from wave_covariance import (
    TRANSFORM_KINDS,
    GridGeometry,
    PlaneWave,
    acoustic_doppler,
    dalembertian_residual,
    light_doppler,
    refinement_study,
    sample_field,
    transformed_field,
)

RESERVED_KEYS = ("kind", "seed", "output")
FORMATS = ("csv", "json")


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass
class Scenario:
    kind: str
    parameters: dict[str, str]
    output_path: Path | None = None
    seed: int = 0
    source_text: str = ""
    source: str | None = None


@dataclass
class ResultTable:
    columns: list[tuple[str, str]]
    rows: list[list[Any]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)
    # side CSVs written while running (``export`` keys)
    exports: list[Path] = field(default_factory=list)

    def __post_init__(self):
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} entries, expected {width}")

    @property
    def header(self) -> list[str]:
        return [f"{name}[{unit}]" for name, unit in self.columns]


# ---------------------------------------------------------------------------
# Parameter validation helpers
# ---------------------------------------------------------------------------


def _constants(info: ValidationInfo) -> PhysicalConstants:
    return (info.context or {}).get("constants", SI_CONSTANTS)


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return value


def _positive(value: float) -> float:
    if not value > 0:
        raise ValueError("must be positive")
    return value


def _non_negative(value: float) -> float:
    if not value >= 0:
        raise ValueError("must be non-negative")
    return value


def _subluminal(value: float, info: ValidationInfo) -> float:
    if not abs(value) < _constants(info).C:
        raise ValueError("must satisfy |{field}| < C")
    return value


def _at_most_luminal(value: float, info: ValidationInfo) -> float:
    if not abs(value) <= _constants(info).C:
        raise ValueError("must satisfy |{field}| <= C")
    return value


def _all_positive(values: list[float]) -> list[float]:
    if not values:
        raise ValueError("must list at least one value")
    if any(not v > 0 for v in values):
        raise ValueError("entries must be positive")
    return values


Positive = Annotated[float, AfterValidator(_positive)]
NonNegative = Annotated[float, AfterValidator(_non_negative)]
Subluminal = Annotated[float, AfterValidator(_subluminal)]
AtMostLuminal = Annotated[float, AfterValidator(_at_most_luminal)]
FloatList = Annotated[list[float], BeforeValidator(_split_list)]
PositiveList = Annotated[list[float], BeforeValidator(_split_list), AfterValidator(_all_positive)]
IntList = Annotated[list[int], BeforeValidator(_split_list)]
StrList = Annotated[list[str], BeforeValidator(_split_list)]


class KindParams(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False, frozen=True)


class BoostParams(KindParams):
    v: Subluminal
    t: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0


class ComposeParams(KindParams):
    u: float
    uy: float = 0.0
    uz: float = 0.0
    v: Subluminal

    @model_validator(mode="after")
    def check_speed(self, info: ValidationInfo) -> "ComposeParams":
        C = _constants(info).C
        if math.sqrt(self.u**2 + self.uy**2 + self.uz**2) > C * (1.0 + 1e-12):
            raise ValueError("u must satisfy |u| <= C")
        return self


class DilationParams(KindParams):
    dt: Positive
    v: Subluminal


class ContractionParams(KindParams):
    l: Positive
    v: Subluminal


class SimultaneityParams(KindParams):
    v: AtMostLuminal


class MuonParams(KindParams):
    tau0: Positive
    gamma: float
    depth: NonNegative
    half_life: bool = False

    @model_validator(mode="after")
    def check_gamma(self) -> "MuonParams":
        if not self.gamma >= 1:
            raise ValueError("gamma must be >= 1")
        return self


class CovarianceParams(KindParams):
    wavelength: Positive
    v: Subluminal
    levels: IntList | None = None
    cfl: Positive | None = None
    transforms: StrList = list(TRANSFORM_KINDS)
    export: Path | None = None

    @model_validator(mode="after")
    def check_lists(self) -> "CovarianceParams":
        unknown = [k for k in self.transforms if k not in TRANSFORM_KINDS]
        if unknown:
            raise ValueError(f"transforms must be drawn from {TRANSFORM_KINDS}, got {unknown}")
        if not self.transforms:
            raise ValueError("transforms must name at least one transform")
        if self.levels is not None:
            check_refinement_levels(self.levels)
        return self


class ChainParams(KindParams):
    N: int
    Theta: Positive
    chi_tilde: Positive
    chi: Positive
    a: Positive = 1.0
    Omega0: Positive = 1.0
    dt: Positive | None = None
    steps: int = 10_000
    modes: IntList | None = None
    initial: str | None = None
    amplitude: float = 1.0
    record_every: int = 1
    export: Path | None = None
    dispersion_export: Path | None = None

    @model_validator(mode="after")
    def check_chain(self) -> "ChainParams":
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")
        if self.modes is not None and self.initial is not None:
            raise ValueError("give either modes or initial, not both")
        if self.initial is not None and self.initial != "random" and not self.initial.lstrip("-").isdigit():
            raise ValueError("initial must be 'random' or a mode index")
        return self


class AmplitudesParams(KindParams):
    omega: Positive
    q: Positive | None = None
    N: int
    Omega0: Positive
    Theta: Positive | None = None

    @model_validator(mode="after")
    def check_n(self) -> "AmplitudesParams":
        if self.N < 2:
            raise ValueError("N must be >= 2")
        return self


_AXES = {
    "+x": (1.0, 0.0, 0.0),
    "-x": (-1.0, 0.0, 0.0),
    "+y": (0.0, 1.0, 0.0),
    "-y": (0.0, -1.0, 0.0),
    "+z": (0.0, 0.0, 1.0),
    "-z": (0.0, 0.0, -1.0),
}
# a polarization perpendicular to each propagation axis
_POLARIZATION = {"x": (0.0, 1.0, 0.0), "y": (0.0, 0.0, 1.0), "z": (1.0, 0.0, 0.0)}


class MomentumParams(KindParams):
    omega: PositiveList
    occupation: FloatList | None = None
    direction: StrList | None = None
    N: int
    Omega0: Positive

    @model_validator(mode="after")
    def check_modes(self) -> "MomentumParams":
        count = len(self.omega)
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.occupation is not None:
            if len(self.occupation) != count:
                raise ValueError("occupation needs one entry per omega")
            if any(not n >= 0 for n in self.occupation):
                raise ValueError("occupation entries must be non-negative")
        if self.direction is not None:
            if len(self.direction) != count:
                raise ValueError("direction needs one entry per omega")
            bad = [d for d in self.direction if _axis_key(d) not in _AXES]
            if bad:
                raise ValueError(f"direction entries must be one of {sorted(_AXES)}, got {bad}")
        return self


def _axis_key(label: str) -> str:
    label = label.strip().lower()
    return label if label[:1] in "+-" else f"+{label}"


class CrossSectionParams(KindParams):
    omega: Positive


class DispersionParams(KindParams):
    oscillator_density: NonNegative
    omega_c: NonNegative
    m_osc: NonNegative
    tau_damp: NonNegative
    omega: PositiveList | None = None
    omega_min: Positive | None = None
    omega_max: Positive | None = None
    points: int = 101
    mu: Positive = 1.0
    export: Path | None = None

    @model_validator(mode="after")
    def check_grid(self) -> "DispersionParams":
        if self.omega is None:
            if self.omega_min is None or self.omega_max is None:
                raise ValueError("give omega or both omega_min and omega_max")
            if not self.omega_max > self.omega_min:
                raise ValueError("omega_max must exceed omega_min")
            if self.points < 2:
                raise ValueError("points must be >= 2")
        return self

    def sweep_frequencies(self) -> list[float]:
        if self.omega is not None:
            return list(self.omega)
        return [float(w) for w in np.linspace(self.omega_min, self.omega_max, self.points)]


class DragParams(KindParams):
    v_medium: Subluminal
    n: Positive | None = None
    epsilon: Positive | None = None
    mu: Positive = 1.0

    @model_validator(mode="after")
    def check_medium(self) -> "DragParams":
        if (self.n is None) == (self.epsilon is None):
            raise ValueError("give exactly one of n or epsilon")
        return self

    def medium(self) -> Medium:
        if self.n is not None:
            return Medium.from_index(self.n, self.mu)
        return Medium(epsilon=self.epsilon, mu=self.mu)


class TransitionParams(KindParams):
    omega12: Positive
    r12: NonNegative
    photon_count: NonNegative = 0.0
    direction: Literal["emission", "absorption"] = "emission"


class MichelsonParams(KindParams):
    arm_length: Positive
    wavelength: Positive
    ether_speed: NonNegative
    orientation: float = 0.0
    kinematics: Literal["galilean_ether", "galilean_with_contraction", "lorentz"] = "galilean_ether"
    export: Path | None = None
    sweep_points: int = 19

    @model_validator(mode="after")
    def check_speed(self, info: ValidationInfo) -> "MichelsonParams":
        if not self.ether_speed < _constants(info).C:
            raise ValueError("ether_speed must satisfy 0 <= ether_speed < C")
        if self.sweep_points < 2:
            raise ValueError("sweep_points must be >= 2")
        return self


class FizeauParams(KindParams):
    tube_length: Positive
    fluid_velocity: float
    n: Positive
    wavelength: Positive

    @model_validator(mode="after")
    def check_flow(self, info: ValidationInfo) -> "FizeauParams":
        if not abs(self.fluid_velocity) < _constants(info).C / self.n:
            raise ValueError("fluid_velocity must satisfy |fluid_velocity| < C/n")
        return self


class DopplerParams(KindParams):
    f: Positive
    v_source: Subluminal = 0.0
    v_observer: Subluminal = 0.0
    c_sound: Positive = 343.0

    @model_validator(mode="after")
    def check_sound(self) -> "DopplerParams":
        if not abs(self.v_source) < self.c_sound:
            raise ValueError("v_source must satisfy |v_source| < c_sound")
        return self


# ---------------------------------------------------------------------------
# Runners: each returns (columns, rows, summary)
# ---------------------------------------------------------------------------

Columns = list[tuple[str, str]]
RunOutput = tuple[Columns, list[list[Any]], dict[str, Any]]


def _run_boost(p: BoostParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    b = Boost.from_velocity(p.v, constants)
    ev = Event(t=p.t, x=p.x, y=p.y, z=p.z)
    boosted = lorentz_boost(ev, b)
    voigt = voigt_transform(ev, p.v, constants)
    columns = [
        ("gamma", "1"),
        ("rapidity", "1"),
        ("t_prime", "s"),
        ("x_prime", "m"),
        ("y_prime", "m"),
        ("z_prime", "m"),
        ("interval", "m^2"),
        ("interval_prime", "m^2"),
        ("voigt_t_prime", "s"),
        ("voigt_x_prime", "m"),
    ]
    row = [
        b.gamma,
        b.rapidity,
        boosted.t,
        boosted.x,
        boosted.y,
        boosted.z,
        interval(ev, constants),
        interval(boosted, constants),
        voigt.t,
        voigt.x,
    ]
    return columns, [row], {}


def _run_compose(p: ComposeParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    out = compose_velocities(np.array([p.u, p.uy, p.uz]), p.v, constants)
    speed = float(np.linalg.norm(out))
    columns = [
        ("ux_prime", "m/s"),
        ("uy_prime", "m/s"),
        ("uz_prime", "m/s"),
        ("speed_prime", "m/s"),
        ("speed_over_C", "1"),
    ]
    return columns, [[float(out[0]), float(out[1]), float(out[2]), speed, speed / constants.C]], {}


def _run_dilation(p: DilationParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    pair = time_dilation_pair(p.dt, p.v, constants)
    columns = [("dilated", "s"), ("contracted", "s"), ("proper", "s"), ("product", "s^2")]
    return columns, [[pair.dilated, pair.contracted, pair.proper, pair.dilated * pair.contracted]], {}


def _run_contraction(p: ContractionParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    pair = length_contraction_pair(p.l, p.v, constants)
    columns = [
        ("tilde_l", "m"),
        ("bar_l", "m"),
        ("rest", "m"),
        ("primed", "m"),
        ("reconstructed_rest", "m"),
        ("product", "m^2"),
    ]
    row = [
        pair.tilde_l,
        pair.bar_l,
        pair.rest,
        pair.primed,
        pair.reconstructed_rest,
        pair.tilde_l * pair.bar_l,
    ]
    return columns, [row], {}


def _run_simultaneity(p: SimultaneityParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    speed = simultaneity_phase_velocity(p.v, constants)
    ratio = speed if is_infinite(speed) else speed / constants.C
    return [("phase_velocity", "m/s"), ("phase_velocity_over_C", "1")], [[speed, ratio]], {}


def _run_muon(p: MuonParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    passage = muon_penetration(p.tau0, p.gamma, p.depth, constants, half_life=p.half_life)
    columns = [("rest_length", "m"), ("boosted_length", "m"), ("surviving_fraction", "1")]
    return columns, [[passage.rest_length, passage.boosted_length, passage.surviving_fraction]], {}


def _run_covariance(p: CovarianceParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    levels = p.levels or list(settings.refinement_levels)
    cfl = p.cfl or settings.grid_cfl
    wave = PlaneWave.luminal_wave(omega=2.0 * math.pi * constants.C / p.wavelength, constants=constants)
    studies = [refinement_study(wave, p.v, kind, levels, constants, cfl) for kind in p.transforms]
    columns = [("points_per_wavelength", "1"), ("dx", "m")] + [(kind, "1/m^2") for kind in p.transforms]
    rows = []
    for i, points in enumerate(levels):
        rows.append([points, p.wavelength / points] + [study.norms[i] for study in studies])
    summary: dict[str, Any] = {
        study.kind: {"orders": study.orders, "extrapolated_norm": study.extrapolated_norm}
        for study in studies
    }
    summary["levels"] = levels
    summary["cfl"] = cfl
    if p.export is not None:
        # finest grid of the first listed transform
        geometry = GridGeometry.for_wavelength(wave.wavelength, levels[-1], constants, cfl)
        grid = sample_field(transformed_field(wave, p.v, p.transforms[0], constants), geometry)
        residual = dalembertian_residual(grid, constants)
        summary["exports"] = [write_residual_grid(residual, grid, p.export)]
    return columns, rows, summary


def _run_chain(p: ChainParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    cfg = DynamideChainConfig(
        N=p.N,
        Theta=p.Theta,
        chi_tilde=p.chi_tilde,
        chi=p.chi,
        a=p.a,
        Omega0=p.Omega0,
        dt=p.dt,
        steps=p.steps,
        seed=s.seed,
        dt_fraction=settings.chain_dt_fraction,
    )
    initial: Any = p.initial
    if initial is not None and initial != "random":
        initial = int(initial)
    run = simulate_chain(
        cfg, initial=initial, amplitude=p.amplitude, record_every=p.record_every, modes=p.modes
    )
    columns = [("q", "rad/m"), ("omega_analytic", "rad/s"), ("omega_measured", "rad/s"), ("relative_error", "1")]
    rows = []
    for q, measured in run.measured_dispersion:
        analytic = analytic_dispersion(cfg, q)
        rows.append([q, analytic, measured, abs(measured - analytic) / analytic])
    summary: dict[str, Any] = {
        "dt": cfg.dt,
        "omega_max": cfg.omega_max,
        "omega_tilde": cfg.omega_tilde,
        "energy_drift": run.energy_drift,
        "modified_energy_drift": run.modified_energy_drift,
    }
    exports: list[Path] = []
    if p.export is not None:
        exports.append(write_chain_trajectory(run, p.export, p.record_every))
    if p.dispersion_export is not None:
        exports.append(write_chain_dispersion(run, p.dispersion_export))
    if exports:
        summary["exports"] = exports
    return columns, rows, summary


def _field_config(N: int, Omega0: float, Theta: float) -> DynamideChainConfig:
    # Amplitudes and momenta only read N, Θ and the cell volume; the springs are nominal.
    return DynamideChainConfig(N=N, Theta=Theta, chi_tilde=1.0, chi=1.0, Omega0=Omega0, steps=0)


def _run_amplitudes(p: AmplitudesParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    q = p.q if p.q is not None else p.omega / constants.C
    Theta = p.Theta if p.Theta is not None else theta_from_cell(p.Omega0, p.omega, constants)
    cfg = _field_config(p.N, p.Omega0, Theta)
    mode = Mode(q=q, omega=p.omega)
    amp = mode_amplitudes(mode, cfg, constants)
    columns = [
        ("P0", "C/m^2"),
        ("E0", "V/m"),
        ("A0", "V*s/m"),
        ("H0", "A/m"),
        ("Theta", "kg"),
        ("E0_over_omega_A0", "1"),
        ("E0_over_H0", "ohm"),
        ("P0_over_eps0_E0", "1"),
        ("g2_ratio", "1"),
    ]
    row = [
        amp.P0,
        amp.E0,
        amp.A0,
        amp.H0,
        Theta,
        amp.E0 / (p.omega * amp.A0),
        amp.E0 / amp.H0,
        amp.P0 / (constants.eps0 * amp.E0),
        g2_consistency(mode, cfg, constants),
    ]
    return columns, [row], {}


def _run_momentum(p: MomentumParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    count = len(p.omega)
    occupations = p.occupation if p.occupation is not None else [0.0] * count
    directions = p.direction if p.direction is not None else ["+x"] * count
    modes = []
    for omega, n, label in zip(p.omega, occupations, directions):
        key = _axis_key(label)
        modes.append(
            Mode(
                q=omega / constants.C,
                omega=omega,
                occupation=n,
                direction=_AXES[key],
                polarization=_POLARIZATION[key[1]],
            )
        )
    cfg = _field_config(p.N, p.Omega0, 1.0)
    total = momentum_spectrum(modes, cfg, constants)
    columns = [("Px", "kg/(m*s)"), ("Py", "kg/(m*s)"), ("Pz", "kg/(m*s)"), ("magnitude", "kg/(m*s)")]
    return columns, [[float(total[0]), float(total[1]), float(total[2]), float(np.linalg.norm(total))]], {}


def _run_cross_section(p: CrossSectionParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    u = photon_uncertainty(p.omega, constants)
    columns = [("dx2", "m^2"), ("dy2", "m^2"), ("dpx2", "kg^2*m^2/s^2"), ("dpy2", "kg^2*m^2/s^2"), ("sigma", "m^2")]
    return columns, [[u.dx2, u.dy2, u.dpx2, u.dpy2, photon_cross_section(p.omega, constants)]], {}


def _run_dispersion(p: DispersionParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    params = ResonanceParams(
        oscillator_density=p.oscillator_density,
        omega_c=p.omega_c,
        m_osc=p.m_osc,
        tau_damp=p.tau_damp,
    )
    sweep = dispersion_sweep(p.sweep_frequencies(), params, p.mu, constants)
    columns = [("omega", "rad/s"), ("epsilon", "1"), ("n", "1"), ("phase_velocity", "m/s")]
    summary = {"exports": [write_dispersion_sweep(sweep, p.export)]} if p.export is not None else {}
    return columns, sweep[["omega", "epsilon", "n", "phase_velocity"]].values.tolist(), summary


def _run_drag(p: DragParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    medium = p.medium()
    drag = fresnel_drag(medium, p.v_medium, constants)
    columns = [
        ("n", "1"),
        ("drag_coefficient", "1"),
        ("approx", "m/s"),
        ("exact", "m/s"),
        ("gap", "m/s"),
    ]
    return columns, [[medium.n, drag.drag_coefficient, drag.approx, drag.exact, drag.gap]], {}


def _run_transition(p: TransitionParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    rate = transition_rate(
        Transition(omega12=p.omega12, r12=p.r12, photon_count=p.photon_count), p.direction, constants
    )
    lifetime = 1.0 / rate.P12 if rate.P12 > 0 else math.inf
    columns = [("P12", "1/s"), ("intensity", "W"), ("lifetime", "s")]
    return columns, [[rate.P12, rate.intensity, lifetime]], {}


def _run_michelson(p: MichelsonParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    cfg = InterferometerConfig(
        arm_length=p.arm_length,
        wavelength=p.wavelength,
        ether_speed=p.ether_speed,
        orientation=p.orientation,
        kinematics=p.kinematics,
    )
    times = ether_arm_times(cfg, constants)
    columns = [
        ("t_parallel", "s"),
        ("t_perpendicular", "s"),
        ("delta_t", "s"),
        ("fringe_shift", "1"),
    ]
    row = [
        times.t_parallel,
        times.t_perpendicular,
        arm_time_difference(cfg, constants),
        rotation_fringe_shift(cfg, constants),
    ]
    summary: dict[str, Any] = {}
    if p.export is not None:
        angles = np.linspace(0.0, math.pi, p.sweep_points)
        summary["exports"] = [write_orientation_sweep(orientation_sweep(cfg, angles, constants), p.export)]
    return columns, [row], summary


def _run_fizeau(p: FizeauParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    cfg = FizeauConfig(
        tube_length=p.tube_length,
        fluid_velocity=p.fluid_velocity,
        medium=Medium.from_index(p.n),
        wavelength=p.wavelength,
    )
    columns = [("fringe_shift", "1"), ("first_order", "1")]
    return columns, [[fizeau_fringe_shift(cfg, constants), fizeau_first_order(cfg, constants)]], {}


def _run_doppler(p: DopplerParams, s: Scenario, constants: PhysicalConstants, settings: Settings) -> RunOutput:
    columns = [("f_acoustic", "Hz"), ("f_light", "Hz")]
    row = [
        acoustic_doppler(p.f, p.v_source, p.v_observer, p.c_sound),
        light_doppler(p.f, p.v_source, p.v_observer, constants),
    ]
    return columns, [row], {}


@dataclass(frozen=True)
class KindSpec:
    model: type[KindParams]
    runner: Callable[[Any, Scenario, PhysicalConstants, Settings], RunOutput]
    summary: str

    def required(self) -> list[str]:
        return [name for name, f in self.model.model_fields.items() if f.is_required()]

    def optional(self) -> list[str]:
        return [name for name, f in self.model.model_fields.items() if not f.is_required()]


KINDS: dict[str, KindSpec] = {
    "boost": KindSpec(BoostParams, _run_boost, "Lorentz and Voigt images of one event"),
    "compose": KindSpec(ComposeParams, _run_compose, "velocity seen from a frame moving along x"),
    "dilation": KindSpec(DilationParams, _run_dilation, "dilated/contracted interval pair"),
    "contraction": KindSpec(ContractionParams, _run_contraction, "contracted length pair"),
    "simultaneity": KindSpec(SimultaneityParams, _run_simultaneity, "phase velocity of simultaneity"),
    "muon": KindSpec(MuonParams, _run_muon, "decay lengths and surviving fraction"),
    "covariance": KindSpec(CovarianceParams, _run_covariance, "wave-equation residuals under refinement"),
    "chain": KindSpec(ChainParams, _run_chain, "leapfrog chain run and measured dispersion"),
    "amplitudes": KindSpec(AmplitudesParams, _run_amplitudes, "P/E/A/H amplitudes of one mode"),
    "momentum": KindSpec(MomentumParams, _run_momentum, "period-averaged field momentum"),
    "cross_section": KindSpec(CrossSectionParams, _run_cross_section, "photon cross-section"),
    "dispersion": KindSpec(DispersionParams, _run_dispersion, "dielectric dispersion sweep"),
    "drag": KindSpec(DragParams, _run_drag, "Fresnel drag, first order and exact"),
    "transition": KindSpec(TransitionParams, _run_transition, "dipole transition rate"),
    "michelson": KindSpec(MichelsonParams, _run_michelson, "arm times and 90° rotation fringe shift"),
    "fizeau": KindSpec(FizeauParams, _run_fizeau, "moving-fluid fringe shift"),
    "doppler": KindSpec(DopplerParams, _run_doppler, "acoustic and light Doppler shifts"),
}


# ---------------------------------------------------------------------------
# Parsing and validation
# ---------------------------------------------------------------------------


def _validation_message(exc: ValidationError) -> tuple[str, str | None]:
    err = exc.errors()[0]
    key = ".".join(str(part) for part in err.get("loc", ()) if not isinstance(part, int)) or None
    if err["type"] == "extra_forbidden":
        return f"unknown key {key!r}", key
    if err["type"] == "missing":
        return f"missing required parameter {key!r}", key
    msg = err["msg"]
    if err["type"] == "value_error":
        msg = msg.removeprefix("Value error, ")
        if key is None:
            return msg, None
        return f"{key} {msg.replace('{field}', key)}", key
    return (f"{key}: {msg}" if key else msg), key


def validate_parameters(
    kind: str, parameters: dict[str, Any], constants: PhysicalConstants = SI_CONSTANTS
) -> KindParams:
    spec = KINDS.get(kind)
    if spec is None:
        raise ScenarioValidationError(
            f"unknown kind {kind!r}; expected one of {', '.join(sorted(KINDS))}", key="kind"
        )
    try:
        return spec.model.model_validate(parameters, context={"constants": constants})
    except ValidationError as e:
        message, key = _validation_message(e)
        raise ScenarioValidationError(message, key=key) from e


def parse_scenario_text(
    text: str,
    source: str | None = None,
    constants: PhysicalConstants = SI_CONSTANTS,
) -> Scenario:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioParseError("expected 'key = value'", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not key.replace("_", "").isalnum():
            raise ScenarioParseError(f"invalid key {key!r}", line=lineno)
        if not value:
            raise ScenarioParseError(f"empty value for {key!r}", line=lineno)
        if key in entries:
            raise ScenarioParseError(f"duplicate key {key!r}", line=lineno)
        entries[key] = value

    if not entries:
        raise ScenarioParseError("empty scenario")
    if "kind" not in entries:
        raise ScenarioValidationError("missing required key 'kind'", key="kind")

    kind = entries.pop("kind").lower()
    seed_text = entries.pop("seed", "0")
    try:
        seed = int(seed_text)
    except ValueError as e:
        raise ScenarioValidationError(f"seed must be an integer, got {seed_text!r}", key="seed") from e
    if seed < 0:
        raise ScenarioValidationError("seed must be non-negative", key="seed")
    output = entries.pop("output", None)

    validate_parameters(kind, entries, constants)
    return Scenario(
        kind=kind,
        parameters=entries,
        output_path=Path(output) if output else None,
        seed=seed,
        source_text=text,
        source=source,
    )


def parse_scenario(path: Path | str, constants: PhysicalConstants = SI_CONSTANTS) -> Scenario:
    path = Path(path)
    raw = path.read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ScenarioParseError(f"{path} is not UTF-8 text") from e
    return parse_scenario_text(text, source=str(path), constants=constants)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def run_scenario(
    s: Scenario,
    constants: PhysicalConstants = SI_CONSTANTS,
    settings: Settings | None = None,
) -> ResultTable:
    settings = settings or Settings()
    params = validate_parameters(s.kind, s.parameters, constants)
    spec = KINDS[s.kind]
    try:
        columns, rows, summary = spec.runner(params, s, constants, settings)
    except (DomainError, ArithmeticError) as e:
        raise ScenarioRunError(str(e) or type(e).__name__, kind=s.kind, source=s.source) from e

    exports = summary.pop("exports", [])
    metadata = {
        "kind": s.kind,
        "seed": s.seed,
        "scenario": s.source_text,
        "artifact_version": ARTIFACT_VERSION,
        "constants": constants.as_dict(),
        "numerics": settings.numerics(),
    }
    if summary:
        metadata["summary"] = summary
    if exports:
        metadata["exports"] = [str(path) for path in exports]
    return ResultTable(columns=columns, rows=rows, metadata=metadata, exports=exports)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _format_cell(value: Any, digits: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, f".{digits}g")
    # INFINITE_VELOCITY and any other tagged value
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return _format_cell(value, FLOAT_DIGITS)
        return value
    if value is None or isinstance(value, str):
        return value
    return str(value)


def table_frame(table: ResultTable, digits: int = FLOAT_DIGITS) -> pd.DataFrame:
    """Cells pre-rendered as text so the CSV bytes do not depend on dtype inference."""
    rendered = [[_format_cell(v, digits) for v in row] for row in table.rows]
    return pd.DataFrame(rendered, columns=table.header, dtype=object)


def render(table: ResultTable, fmt: str = "csv", digits: int = FLOAT_DIGITS) -> str:
    if fmt == "csv":
        return table_frame(table, digits).to_csv(index=False, lineterminator="\n")
    if fmt == "json":
        payload = {
            "metadata": _jsonable(table.metadata),
            "columns": [{"name": name, "unit": unit} for name, unit in table.columns],
            "rows": _jsonable(table.rows),
        }
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def emit(table: ResultTable, fmt: str, path: Path | str, digits: int = FLOAT_DIGITS) -> Path:
    text = render(table, fmt, digits)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        f.write(text)
    return path
