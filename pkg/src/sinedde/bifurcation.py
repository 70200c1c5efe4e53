"""Parameter sweeps over the second delay and coarse regime classification.

Each grid value integrates from the small constant history 0.01, discards a
transient, and keeps the local extrema of the remaining window; the extrema
either collapse to an equilibrium, cluster into a small set of values
(periodic), or fill out an interval (chaotic).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import AnalysisError, DivergenceError, ParameterError
from .integrate import SolverConfig, integrate, local_extrema
from .lyapunov import largest_lyapunov
from .model import HistorySpec, ModelParams

EPS_EQUILIBRIUM = 1e-4      # absolute tail peak-to-peak bound for an equilibrium
EPS_CLUSTER_FRAC = 1e-2     # cluster tolerance as fraction of attractor extent
MAX_PERIODIC_CLUSTERS = 16  # beyond this the diagram is indistinguishable from chaos
CHAOS_LAMBDA = 0.05         # Lyapunov confirmation threshold
TAIL_FRACTION = 0.2         # share of the post-transient window treated as tail

SWEEP_HISTORY_VALUE = 0.01  # constant history used throughout the sweeps


@dataclass(frozen=True)
class Regime:
    """Coarse dynamical label of one sweep row."""

    kind: str  # "equilibrium" | "periodic" | "chaotic" | "unbounded"
    x_star: float | None = None
    n_clusters: int | None = None
    lyap_confirmed: bool | None = None

    def label(self) -> str:
        if self.kind == "periodic":
            return f"periodic({self.n_clusters})"
        if self.kind == "equilibrium":
            return f"equilibrium({self.x_star:.4f})"
        return self.kind


@dataclass(frozen=True, eq=False)
class BifurcationRow:
    """One tau2 value: sorted post-transient extrema plus the regime label."""

    tau2: float
    samples: np.ndarray
    regime: Regime
    lambda_max: float | None = None


def classify_regime(samples, traj_tail, eps_eq: float = EPS_EQUILIBRIUM,
                    eps_cluster: float | None = None,
                    lambda_max: float | None = None) -> Regime:
    """Label a completed run from its extrema values and trajectory tail.

    Equilibrium when the tail's peak-to-peak range is below ``eps_eq`` (the
    tail mean is reported as the equilibrium); otherwise the extrema values
    are clustered with tolerance ``eps_cluster`` (default 1% of their
    extent): up to 16 clusters reads as periodic, more as chaotic.  With a
    Lyapunov exponent attached, chaos is confirmed when it exceeds 0.05.

    A window with no extrema at all (monotone drift toward a limit) is
    reported as an equilibrium at the last tail value.
    """
    tail = np.asarray(traj_tail, dtype=float)
    samples = np.sort(np.asarray(samples, dtype=float))
    if tail.size and float(np.ptp(tail)) < eps_eq:
        return Regime("equilibrium", x_star=float(tail.mean()))
    if samples.size == 0:
        x_star = float(tail[-1]) if tail.size else 0.0
        return Regime("equilibrium", x_star=x_star)

    extent = float(samples[-1] - samples[0])
    if eps_cluster is None:
        eps_cluster = EPS_CLUSTER_FRAC * max(extent, 1e-12)
    # width-capped clusters over the sorted values: a periodic orbit gives a
    # few tight value groups, chaos fills the extent with many
    n_clusters = 1
    start = samples[0]
    for v in samples[1:]:
        if v - start > eps_cluster:
            n_clusters += 1
            start = v
    if n_clusters <= MAX_PERIODIC_CLUSTERS:
        return Regime("periodic", n_clusters=n_clusters)
    confirmed = None if lambda_max is None else bool(lambda_max > CHAOS_LAMBDA)
    return Regime("chaotic", n_clusters=n_clusters, lyap_confirmed=confirmed)


def _sweep_one(args):
    base, tau2, cfg, lyap = args
    p = replace(base, tau2=tau2)
    hist = HistorySpec.constant(SWEEP_HISTORY_VALUE)
    try:
        traj = integrate(p, hist, cfg, keep_dense=False)
    except DivergenceError:
        return BifurcationRow(tau2, np.empty(0), Regime("unbounded"), None)

    extrema = local_extrema(traj, from_index=traj.transient_index)
    samples = np.sort(np.array([v for _, v, _ in extrema]))
    post = traj.post_transient()
    tail = post[int((1.0 - TAIL_FRACTION) * post.size):]

    lam = None
    if lyap:
        try:
            lam = largest_lyapunov(traj).lambda_max
        except AnalysisError:
            lam = None  # converged/degenerate series has no exponent to report
    regime = classify_regime(samples, tail, lambda_max=lam)
    return BifurcationRow(tau2, samples, regime, lam)


def sweep_tau2(base: ModelParams, tau2_grid, cfg: SolverConfig,
               lyap: bool = False, jobs: int = 1) -> list[BifurcationRow]:
    """Sweep the second delay over an ascending grid.

    Rows keep the grid order; a diverging run is recorded as "unbounded"
    and the sweep continues.  ``jobs`` > 1 fans rows out over worker
    processes.
    """
    grid = [float(t) for t in tau2_grid]
    if not grid:
        raise ParameterError("tau2 grid must be nonempty")
    if any(b <= a for a, b in zip(grid[:-1], grid[1:])):
        raise ParameterError("tau2 grid must be strictly ascending")

    work = [(base, t, cfg, lyap) for t in grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_one, work))
    return [_sweep_one(w) for w in work]
