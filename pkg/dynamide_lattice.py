"""
dynamide_lattice.py

The dynamide vacuum model as a well-defined mathematical model:

- the two characteristic frequencies of the lattice and the dynamide "mass"
  fixed by the Coulomb relation,
- the amplitude prefactors of the quantized polarization, electric intensity,
  vector potential and magnetic intensity of one mode,
- the force decomposition v × (n × I), the Poynting/Umov momentum spectrum
  and the photon cross-section,
- a classical 1-D chain (on-site spring χ̃ plus nearest-neighbour spring χ)
  integrated with velocity-Verlet leapfrog, whose normal-mode frequencies are
  read back from the FFT peak of each mode coordinate.

Creation/annihilation operators are represented by real occupation numbers
n_q and real phases: only prefactors and (n_q + 1/2) expectation values are
computed. The E, A and H prefactors keep the 2π factors of Gaussian-style
conventions; the consistency chain E0 = ω·A0, E0/H0 = sqrt(μ0/ε0),
P0/ε0 = E0 closes regardless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from config import SI_CONSTANTS, PhysicalConstants
from errors import DomainError

_UNIT_TOL = 1e-12


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be positive")


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass
class DynamideChainConfig:
    N: int
    Theta: float
    chi_tilde: float
    chi: float
    a: float = 1.0
    Omega0: float = 1.0
    boundary: str = "periodic"
    dt: float | None = None
    steps: int = 10_000
    seed: int = 0
    dt_fraction: float = 0.1

    def __post_init__(self):
        # N = 2 is allowed for the two-site closed-form check.
        if int(self.N) != self.N or self.N < 2:
            raise DomainError("N must be an integer >= 2")
        self.N = int(self.N)
        _require_positive(
            Theta=self.Theta, chi_tilde=self.chi_tilde, chi=self.chi, a=self.a, Omega0=self.Omega0
        )
        if self.boundary != "periodic":
            raise DomainError("only periodic boundaries are supported")
        if self.steps < 0:
            raise DomainError("steps must be non-negative")
        if self.dt is None:
            self.dt = self.dt_fraction / self.omega_max
        if not self.dt > 0:
            raise DomainError("dt must be positive")
        if not self.dt < 2.0 / self.omega_max:
            raise DomainError(
                f"dt = {self.dt:g} s violates the leapfrog stability bound "
                f"dt < 2/omega_max = {2.0 / self.omega_max:g} s"
            )

    @property
    def Omega(self) -> float:
        """Total volume NΩ₀."""
        return self.N * self.Omega0

    @property
    def omega_tilde(self) -> float:
        return intra_frequency(self.chi_tilde, self.Theta)

    @property
    def omega_max(self) -> float:
        return band_edge(self)

    def wavevectors(self) -> np.ndarray:
        """Allowed q = 2πm/(Na) for m = 0..N/2."""
        m = np.arange(self.N // 2 + 1)
        return 2.0 * math.pi * m / (self.N * self.a)


@dataclass
class Mode:
    q: float
    omega: float
    occupation: float = 0.0
    direction: tuple[float, float, float] = (1.0, 0.0, 0.0)
    polarization: tuple[float, float, float] = (0.0, 1.0, 0.0)

    def __post_init__(self):
        if not self.occupation >= 0:
            raise DomainError("occupation must be non-negative")
        n = np.asarray(self.direction, dtype=float)
        pol = np.asarray(self.polarization, dtype=float)
        for name, vec in (("direction", n), ("polarization", pol)):
            if vec.shape != (3,) or abs(np.linalg.norm(vec) - 1.0) > _UNIT_TOL:
                raise DomainError(f"{name} must be a unit 3-vector")
        if abs(float(n @ pol)) > _UNIT_TOL:
            raise DomainError("direction must be perpendicular to polarization")

    @property
    def n_hat(self) -> np.ndarray:
        return np.asarray(self.direction, dtype=float)

    @property
    def pol(self) -> np.ndarray:
        return np.asarray(self.polarization, dtype=float)


@dataclass(frozen=True)
class ModeAmplitudes:
    P0: float
    E0: float
    A0: float
    H0: float


@dataclass(frozen=True)
class ForceTerms:
    term_parallel: np.ndarray
    term_transverse: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.term_parallel + self.term_transverse


@dataclass(frozen=True)
class PhotonUncertainty:
    dx2: float
    dy2: float
    dpx2: float
    dpy2: float


@dataclass
class ChainRun:
    config: DynamideChainConfig
    times: np.ndarray
    displacements: np.ndarray
    velocities: np.ndarray
    energy: np.ndarray
    modified_energy: np.ndarray
    measured_dispersion: list[tuple[float, float]] = field(default_factory=list)

    @property
    def energy_drift(self) -> float:
        return _relative_drift(self.energy)

    @property
    def modified_energy_drift(self) -> float:
        """Drift of the quadratic invariant leapfrog conserves exactly."""
        return _relative_drift(self.modified_energy)


def _relative_drift(series: np.ndarray) -> float:
    if series.size == 0 or series[0] == 0:
        return 0.0
    return float(np.max(np.abs(series - series[0])) / abs(series[0]))


# ---------------------------------------------------------------------------
# Frequencies and the Coulomb mass
# ---------------------------------------------------------------------------


def intra_frequency(chi_tilde: float, Theta: float) -> float:
    """ω̃ = sqrt(2χ̃/Θ)."""
    _require_positive(chi_tilde=chi_tilde, Theta=Theta)
    return math.sqrt(2.0 * chi_tilde / Theta)


def collective_frequency(chi: float, Theta: float) -> float:
    """ω = sqrt(4χ/(2Θ)); equals sqrt(2)·ω̃ when χ = 2χ̃."""
    _require_positive(chi=chi, Theta=Theta)
    return math.sqrt(4.0 * chi / (2.0 * Theta))


def theta_from_cell(
    Omega0: float, omega: float, constants: PhysicalConstants = SI_CONSTANTS
) -> float:
    """Θω² = 4e²/(4πΩ₀ε₀)."""
    _require_positive(Omega0=Omega0, omega=omega)
    return 4.0 * constants.e**2 / (4.0 * math.pi * Omega0 * constants.eps0 * omega**2)


def theta_from_wavevector(
    Omega0: float, q: float, constants: PhysicalConstants = SI_CONSTANTS
) -> float:
    """Wavevector form: ΘC² = e²/(4πΩ₀q²ε₀)."""
    _require_positive(Omega0=Omega0, q=q)
    return constants.e**2 / (4.0 * math.pi * Omega0 * q**2 * constants.eps0 * constants.C**2)


def theta_forms_ratio(
    Omega0: float, omega: float, q: float, constants: PhysicalConstants = SI_CONSTANTS
) -> float:
    """Θ(first form)/Θ(second form) = 4q²C²/ω²; 1 only when ω = 2Cq."""
    return theta_from_cell(Omega0, omega, constants) / theta_from_wavevector(Omega0, q, constants)


def analytic_dispersion(cfg: DynamideChainConfig, q):
    """ω(q) = sqrt(ω̃² + (4χ/Θ)·sin²(qa/2))."""
    q = np.asarray(q, dtype=float)
    omega = np.sqrt(
        cfg.omega_tilde**2 + (4.0 * cfg.chi / cfg.Theta) * np.sin(q * cfg.a / 2.0) ** 2
    )
    return float(omega) if omega.ndim == 0 else omega


def band_edge(cfg: DynamideChainConfig) -> float:
    return math.sqrt(2.0 * cfg.chi_tilde / cfg.Theta + 4.0 * cfg.chi / cfg.Theta)


# ---------------------------------------------------------------------------
# Mode amplitudes, force, momentum, cross-section
# ---------------------------------------------------------------------------


def mode_amplitudes(
    mode: Mode, cfg: DynamideChainConfig, constants: PhysicalConstants = SI_CONSTANTS
) -> ModeAmplitudes:
    omega = mode.omega
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError("mode frequency must be positive (amplitudes diverge at 0)")
    hbar = constants.hbar
    Omega = cfg.Omega
    P0 = (2.0 * constants.e / (cfg.Omega0 * math.sqrt(cfg.N))) * math.sqrt(
        hbar / (2.0 * cfg.Theta * omega)
    )
    E0 = math.sqrt(2.0 * math.pi * hbar * omega / (Omega * constants.eps0))
    A0 = math.sqrt(2.0 * math.pi * hbar / (Omega * omega * constants.eps0))
    H0 = math.sqrt(2.0 * math.pi * hbar * omega / (Omega * constants.mu0))
    return ModeAmplitudes(P0=P0, E0=E0, A0=A0, H0=H0)


def g2_consistency(
    mode: Mode, cfg: DynamideChainConfig, constants: PhysicalConstants = SI_CONSTANTS
) -> float:
    """
    Ratio of the μ₀-form vector-potential prefactor to the ε₀-form one.
    Equal to ω/(Cq): 1 for luminal modes, reported (not raised) otherwise.
    """
    _require_positive(omega=mode.omega, q=mode.q)
    hbar = constants.hbar
    g2 = math.sqrt(2.0 * math.pi * hbar * mode.omega * constants.mu0 / (cfg.Omega * mode.q**2))
    g1 = math.sqrt(2.0 * math.pi * hbar / (cfg.Omega * mode.omega * constants.eps0))
    return g2 / g1


def force_decomposition(v_charge: Sequence[float], mode: Mode) -> ForceTerms:
    """v × (n × I) = n(v·I) − I(v·n)."""
    v = np.asarray(v_charge, dtype=float)
    n_hat, pol = mode.n_hat, mode.pol
    return ForceTerms(
        term_parallel=n_hat * float(v @ pol),
        term_transverse=-pol * float(v @ n_hat),
    )


def momentum_spectrum(
    modes: Iterable[Mode],
    cfg: DynamideChainConfig,
    constants: PhysicalConstants = SI_CONSTANTS,
) -> np.ndarray:
    """
    Period-averaged field momentum Σ n̂·ħω/(ΩC)·(n_q + 1/2). The oscillating
    a⁺a⁺ / aa terms average to zero and are left out (see
    ``instantaneous_momentum``).
    """
    total = np.zeros(3)
    scale = constants.hbar / (cfg.Omega * constants.C)
    for mode in modes:
        total = total + mode.n_hat * scale * mode.omega * (mode.occupation + 0.5)
    return total


def instantaneous_momentum(
    modes: Sequence[Mode],
    cfg: DynamideChainConfig,
    t: float,
    r: Sequence[float] = (0.0, 0.0, 0.0),
    phases: Sequence[float] | None = None,
    constants: PhysicalConstants = SI_CONSTANTS,
) -> np.ndarray:
    """
    Momentum with the oscillating terms kept, amplitudes taken as
    sqrt(n_q)·exp(iθ_q):
    Σ n̂·ħω/(2ΩC)·[2n_q + 1 + 2n_q·cos(2(ωt − q n̂·r + θ_q))].
    """
    r = np.asarray(r, dtype=float)
    if phases is None:
        phases = [0.0] * len(modes)
    if len(phases) != len(modes):
        raise DomainError("phases must have one entry per mode")
    total = np.zeros(3)
    scale = constants.hbar / (2.0 * cfg.Omega * constants.C)
    for mode, theta in zip(modes, phases):
        n = mode.occupation
        arg = 2.0 * (mode.omega * t - mode.q * float(mode.n_hat @ r) + theta)
        total = total + mode.n_hat * scale * mode.omega * (2.0 * n + 1.0 + 2.0 * n * math.cos(arg))
    return total


def photon_cross_section(omega: float, constants: PhysicalConstants = SI_CONSTANTS) -> float:
    """σ₁ = π((δx)² + (δy)²) with (δx)² = (δy)² = (C/ω)²/2, i.e. π·C²/ω²."""
    u = photon_uncertainty(omega, constants)
    return math.pi * (u.dx2 + u.dy2)


def photon_uncertainty(
    omega: float, constants: PhysicalConstants = SI_CONSTANTS
) -> PhotonUncertainty:
    """Transverse position dispersions and the momentum dispersions ħ²/(4(δx)²)."""
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError("omega must be positive")
    dx2 = 0.5 * (constants.C / omega) ** 2
    dp2 = constants.hbar**2 / (4.0 * dx2)
    return PhotonUncertainty(dx2=dx2, dy2=dx2, dpx2=dp2, dpy2=dp2)


# ---------------------------------------------------------------------------
# Chain dynamics
# ---------------------------------------------------------------------------


def _acceleration(u: np.ndarray, cfg: DynamideChainConfig) -> np.ndarray:
    coupling = np.roll(u, -1) - 2.0 * u + np.roll(u, 1)
    return (-2.0 * cfg.chi_tilde * u + cfg.chi * coupling) / cfg.Theta


def _initial_profile(
    cfg: DynamideChainConfig, initial, amplitude: float, modes: Sequence[int] | None
) -> np.ndarray:
    sites = np.arange(cfg.N)
    if modes is not None:
        if initial is not None:
            raise DomainError("give either an initial profile or mode indices, not both")
        out = np.zeros(cfg.N)
        for m in modes:
            out += amplitude * np.cos(2.0 * math.pi * int(m) * sites / cfg.N)
        return out
    if initial is None:
        return np.zeros(cfg.N)
    if isinstance(initial, str):
        if initial != "random":
            raise DomainError(f"unknown initial profile {initial!r}")
        rng = np.random.default_rng(cfg.seed)
        return amplitude * rng.standard_normal(cfg.N)
    if np.isscalar(initial):
        m = int(initial)
        return amplitude * np.cos(2.0 * math.pi * m * sites / cfg.N)
    profile = np.asarray(initial, dtype=float)
    if profile.shape != (cfg.N,):
        raise DomainError(f"displacement profile must have {cfg.N} entries")
    return profile.copy()


def simulate_chain(
    cfg: DynamideChainConfig,
    initial=None,
    initial_velocity: Sequence[float] | None = None,
    amplitude: float = 1.0,
    record_every: int = 1,
    modes: Sequence[int] | None = None,
) -> ChainRun:
    """
    Integrate Θü_j = −2χ̃u_j + χ(u_{j+1} − 2u_j + u_{j−1}) on a periodic chain.

    ``initial`` is a normal-mode index, a full displacement profile,
    ``"random"`` (seeded by ``cfg.seed``) or ``None``; ``modes`` superposes
    several normal modes of equal ``amplitude`` instead.
    """
    if record_every < 1:
        raise DomainError("record_every must be >= 1")
    if record_every * cfg.dt >= math.pi / cfg.omega_max:
        raise DomainError("record_every too coarse: sampling would alias the band edge")
    u = _initial_profile(cfg, initial, amplitude, modes)
    v = (
        np.zeros(cfg.N)
        if initial_velocity is None
        else np.asarray(initial_velocity, dtype=float).copy()
    )
    if v.shape != (cfg.N,):
        raise DomainError(f"velocity profile must have {cfg.N} entries")

    dt = cfg.dt
    n_rec = cfg.steps // record_every + 1
    us = np.empty((n_rec, cfg.N))
    vs = np.empty((n_rec, cfg.N))
    energy = np.empty(n_rec)
    modified = np.empty(n_rec)

    acc = _acceleration(u, cfg)

    def record(slot: int) -> None:
        us[slot] = u
        vs[slot] = v
        kinetic = 0.5 * cfg.Theta * float(v @ v)
        potential = -0.5 * cfg.Theta * float(u @ acc)
        energy[slot] = kinetic + potential
        modified[slot] = kinetic + potential - cfg.Theta * dt**2 * float(acc @ acc) / 8.0

    record(0)
    slot = 1
    for step in range(1, cfg.steps + 1):
        v_half = v + 0.5 * dt * acc
        u = u + dt * v_half
        acc = _acceleration(u, cfg)
        v = v_half + 0.5 * dt * acc
        if step % record_every == 0:
            record(slot)
            slot += 1

    times = dt * record_every * np.arange(n_rec)
    run = ChainRun(
        config=cfg,
        times=times,
        displacements=us,
        velocities=vs,
        energy=energy,
        modified_energy=modified,
    )
    run.measured_dispersion = measure_dispersion(us, dt * record_every, cfg)
    return run


def _peak_frequency(series: np.ndarray, sample_dt: float) -> float:
    window = np.hanning(series.size)
    power = np.abs(np.fft.rfft(series.real * window)) ** 2
    power += np.abs(np.fft.rfft(series.imag * window)) ** 2
    power[0] = 0.0
    k = int(np.argmax(power))
    shift = 0.0
    if 0 < k < power.size - 1 and power[k - 1] > 0 and power[k + 1] > 0:
        lm, l0, lp = np.log(power[k - 1 : k + 2])
        denom = lm - 2.0 * l0 + lp
        if denom != 0:
            shift = 0.5 * (lm - lp) / denom
    return 2.0 * math.pi * (k + shift) / (series.size * sample_dt)


def measure_dispersion(
    displacements: np.ndarray,
    sample_dt: float,
    cfg: DynamideChainConfig,
    threshold: float = 1e-9,
) -> list[tuple[float, float]]:
    """(q, ω_meas) for every excited normal mode, from the FFT peak of its coordinate.

    Only q >= 0 is reported: a real profile puts waves at ±q in the same
    spatial bin, and the peak search ignores the sign of the frequency.
    """
    if displacements.shape[0] < 4:
        return []
    modal = np.fft.rfft(displacements, axis=1)
    strength = np.max(np.abs(modal), axis=0)
    if strength.max() == 0:
        return []
    q_values = cfg.wavevectors()
    measured = []
    for m, q in enumerate(q_values):
        if strength[m] < threshold * strength.max():
            continue
        measured.append((float(q), _peak_frequency(modal[:, m], sample_dt)))
    return measured
