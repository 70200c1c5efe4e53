"""Two-delay sine-feedback delay differential equation toolkit.

Simulation (integer and Caputo fractional order), characteristic-equation
stability analysis, bifurcation sweeps, largest-Lyapunov-exponent
estimation, linear feedback chaos control, and master-slave
synchronization.
"""

from ._kernels import BACKEND
from .bifurcation import BifurcationRow, Regime, classify_regime, sweep_tau2
from .errors import AnalysisError, DivergenceError, LookupRangeError, ParameterError
from .fractional import FracSolverConfig, integrate_frac
from .integrate import (
    DenseGrid,
    SolverConfig,
    Trajectory,
    integrate,
    integrate_controlled,
    interpolate,
    local_extrema,
    write_trajectory_csv,
)
from .lyapunov import (
    EmbeddingParams,
    LyapunovReport,
    embed,
    false_nearest_neighbors,
    largest_lyapunov,
    lyapunov_from_series,
    mutual_information_lag,
)
from .model import (
    HistorySpec,
    ModelParams,
    equilibrium_residual,
    eval_rhs,
    find_equilibria,
)
from .stability import (
    CriticalGain,
    StabilityClass,
    char_residual,
    check_delay_independent,
    check_sync_condition,
    find_critical_gain,
    simulate_comparison,
)
from .sync import SyncRecord, error_decay_table, simulate_pair

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "BACKEND",
    "BifurcationRow",
    "CriticalGain",
    "DenseGrid",
    "DivergenceError",
    "EmbeddingParams",
    "FracSolverConfig",
    "HistorySpec",
    "LookupRangeError",
    "LyapunovReport",
    "ModelParams",
    "ParameterError",
    "Regime",
    "SolverConfig",
    "StabilityClass",
    "SyncRecord",
    "Trajectory",
    "char_residual",
    "check_delay_independent",
    "check_sync_condition",
    "classify_regime",
    "embed",
    "equilibrium_residual",
    "error_decay_table",
    "eval_rhs",
    "false_nearest_neighbors",
    "find_critical_gain",
    "find_equilibria",
    "integrate",
    "integrate_controlled",
    "integrate_frac",
    "interpolate",
    "largest_lyapunov",
    "local_extrema",
    "lyapunov_from_series",
    "mutual_information_lag",
    "simulate_comparison",
    "simulate_pair",
    "sweep_tau2",
    "write_trajectory_csv",
]
