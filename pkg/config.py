import math
from dataclasses import dataclass
from pathlib import Path

import scipy.constants as SI
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

BASE_DIR = Path(__file__).resolve().parent
ARTIFACT_VERSION = "0.1.0"
# Result files always carry full double precision; not configurable.
FLOAT_DIGITS = 17


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="DYNLAB_", extra="ignore"
    )

    output_dir: Path = Path("output")
    default_format: str = "csv"
    chain_dt_fraction: float = 0.1
    refinement_levels: list[int] = [64, 128, 256]
    grid_cfl: float = 0.5
    suite_dir: Path = BASE_DIR / "scenarios" / "reference"
    jobs: int = 1

    @field_validator("chain_dt_fraction", "grid_cfl")
    @classmethod
    def check_fraction(cls, value: float) -> float:
        if not 0 < value <= 1:
            raise ValueError("must lie in (0, 1]")
        return value

    @field_validator("refinement_levels")
    @classmethod
    def check_levels(cls, value: list[int]) -> list[int]:
        return check_refinement_levels(value)

    def numerics(self) -> dict[str, float | list[int]]:
        """Settings that feed into computed numbers; recorded with every result."""
        return {
            "chain_dt_fraction": self.chain_dt_fraction,
            "refinement_levels": list(self.refinement_levels),
            "grid_cfl": self.grid_cfl,
            "float_digits": FLOAT_DIGITS,
        }


def check_refinement_levels(levels: list[int]) -> list[int]:
    if len(levels) < 2 or min(levels) < 3:
        raise ValueError("levels needs at least two entries, each >= 3")
    if any(fine <= coarse for coarse, fine in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly increasing")
    return levels


# Constants are chosen on the command line only; this variable is refused.
CONSTANTS_ENV_VAR = "DYNLAB_CONSTANTS"


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants shared by every module. C must equal 1/sqrt(eps0 * mu0)."""

    name: str
    C: float
    e: float
    eps0: float
    mu0: float
    hbar: float

    def __post_init__(self):
        for field_name in ("C", "e", "eps0", "mu0", "hbar"):
            if not getattr(self, field_name) > 0:
                raise ValueError(f"{field_name} must be strictly positive")
        implied = 1.0 / math.sqrt(self.eps0 * self.mu0)
        if abs(implied - self.C) > 1e-12 * self.C:
            raise ValueError("C must equal 1/sqrt(eps0*mu0) to relative 1e-12")

    def as_dict(self) -> dict[str, float | str]:
        return {
            "name": self.name,
            "C": self.C,
            "e": self.e,
            "eps0": self.eps0,
            "mu0": self.mu0,
            "hbar": self.hbar,
        }


SI_CONSTANTS = PhysicalConstants(
    name="si",
    C=SI.c,
    e=SI.e,
    # derived from mu0 so the C identity closes to rounding
    eps0=1.0 / (SI.mu_0 * SI.c**2),
    mu0=SI.mu_0,
    hbar=SI.hbar,
)

NATURAL_CONSTANTS = PhysicalConstants(
    name="natural",
    C=1.0,
    e=math.sqrt(4.0 * math.pi * SI.fine_structure),
    eps0=1.0,
    mu0=1.0,
    hbar=1.0,
)

CONSTANT_PROFILES: dict[str, PhysicalConstants] = {
    "si": SI_CONSTANTS,
    "natural": NATURAL_CONSTANTS,
}


def constants_profile(name: str) -> PhysicalConstants:
    key = (name or "").strip().lower()
    if key not in CONSTANT_PROFILES:
        raise ValueError(
            f"unknown constants profile {name!r}; expected one of "
            f"{', '.join(sorted(CONSTANT_PROFILES))}"
        )
    return CONSTANT_PROFILES[key]
