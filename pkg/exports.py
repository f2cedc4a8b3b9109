"""
CSV exports for residual grids, chain runs and sweeps.

Every file is written with pandas at 17 significant digits and LF line
endings so repeated runs produce identical bytes.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

from dynamide_lattice import ChainRun, analytic_dispersion
from wave_covariance import FieldGrid, Residual

FLOAT_FORMAT = "%.17g"


def _write(df: pd.DataFrame, path: Path, header_line: str | None = None, header: bool = True) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        if header_line is not None:
            f.write(header_line + "\n")
        df.to_csv(f, index=False, header=header, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_residual_grid(residual: Residual, grid: FieldGrid, path: Path) -> Path:
    """Row-major interior residuals; first line ``# dt=.. dx=.. origin=(t0,x0)``.

    The residual lives on interior points, so its origin is one step in
    from the sampled grid's origin along both axes.
    """
    t0 = grid.origin[0] + grid.dt
    x0 = grid.origin[1] + grid.dx
    header_line = (
        f"# dt={grid.dt:.17g} dx={grid.dx:.17g} origin=({t0:.17g},{x0:.17g})"
    )
    df = pd.DataFrame(np.asarray(residual.residual_grid))
    return _write(df, path, header_line=header_line, header=False)


def chain_trajectory_frame(run: ChainRun, record_every: int = 1) -> pd.DataFrame:
    n_rec, n_sites = run.displacements.shape
    steps = np.repeat(np.arange(n_rec) * record_every, n_sites)
    sites = np.tile(np.arange(n_sites), n_rec)
    return pd.DataFrame(
        {
            "step": steps,
            "site": sites,
            "displacement": run.displacements.reshape(-1),
            "velocity": run.velocities.reshape(-1),
        }
    )


def write_chain_trajectory(run: ChainRun, path: Path, record_every: int = 1) -> Path:
    return _write(chain_trajectory_frame(run, record_every), path)


def chain_dispersion_frame(run: ChainRun) -> pd.DataFrame:
    rows = [
        {
            "q": q,
            "omega_analytic": analytic_dispersion(run.config, q),
            "omega_measured": omega,
        }
        for q, omega in run.measured_dispersion
    ]
    return pd.DataFrame(rows, columns=["q", "omega_analytic", "omega_measured"])


def write_chain_dispersion(run: ChainRun, path: Path) -> Path:
    return _write(chain_dispersion_frame(run), path)


def write_dispersion_sweep(sweep: pd.DataFrame, path: Path) -> Path:
    return _write(sweep[["omega", "epsilon", "n", "phase_velocity"]], path)


def write_orientation_sweep(sweep: pd.DataFrame, path: Path) -> Path:
    return _write(sweep[["angle_rad", "delta_t_s", "fringe_shift"]], path)
