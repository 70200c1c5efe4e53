"""Method-of-steps RK4 integration with cubic-Hermite dense output.

The solver advances on a fixed grid; delayed states x(t - tau1) and
x(t - tau1 - tau2) are read from the already-computed grid through Hermite
interpolation (history spec for negative times).  The full internal grid is
kept so delayed lookups stay available after the run.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import AnalysisError, DivergenceError, LookupRangeError, ParameterError
from .model import HistorySpec, ModelParams

BLOW_UP_LIMIT = 1e6  # |x| beyond this signals blow-up (genuine dynamics stay O(k/gamma))

_EMPTY = np.empty(0)


def hist_kernel_args(hist: HistorySpec):
    """Flatten a HistorySpec into the (kind, value, ts, xs) kernel arguments."""
    if hist.kind == "constant":
        return _kernels.HIST_CONSTANT, hist.value, _EMPTY, _EMPTY
    return _kernels.HIST_SAMPLED, 0.0, hist.ts, hist.xs


@dataclass(frozen=True)
class SolverConfig:
    """Fixed-step solver settings.

    ``transient`` only marks the cut index on the output; nothing is thrown
    away.  ``record_stride`` keeps every n-th node in the recorded samples.
    """

    t_end: float
    h: float = 0.01
    transient: float = 0.0
    record_stride: int = 1

    def __post_init__(self):
        if self.h <= 0:
            raise ParameterError("step size must be positive")
        if self.t_end <= self.h:
            raise ParameterError("t_end must exceed the step size")
        if self.transient < 0:
            raise ParameterError("transient must be nonnegative")
        if self.record_stride < 1:
            raise ParameterError("record_stride must be >= 1")

    def n_steps(self) -> int:
        return int(round(self.t_end / self.h))

    def check_delays(self, p: ModelParams):
        if p.tau1 > 0 and p.tau2 > 0:
            if self.h > min(p.tau1, p.tau2) / 4.0:
                warnings.warn(
                    f"step h={self.h:g} exceeds min(tau1, tau2)/4; "
                    "delayed stage lookups will extrapolate", stacklevel=3)


@dataclass(frozen=True, eq=False)
class DenseGrid:
    """Full internal solver grid plus the history, for delayed lookups."""

    h: float
    xs: np.ndarray
    fs: np.ndarray
    history: HistorySpec
    delay_span: float

    @property
    def t_final(self) -> float:
        return (self.xs.size - 1) * self.h


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniform-grid solution record.

    Sample ``i`` sits at time ``t0 + i*h_record``; ``transient_index`` is the
    first sample at or past the configured transient span.  ``dense`` carries
    the internal grid when the run kept it.
    """

    t0: float
    h_record: float
    xs: np.ndarray
    params: ModelParams
    transient_index: int = 0
    dense: DenseGrid | None = field(default=None, repr=False)

    def times(self) -> np.ndarray:
        return self.t0 + self.h_record * np.arange(self.xs.size)

    def post_transient(self) -> np.ndarray:
        return self.xs[self.transient_index:]

    def to_csv(self, path):
        write_trajectory_csv(path, self)


def write_trajectory_csv(path, traj: Trajectory):
    """CSV export: header ``t,x``, one row per sample, 17 significant digits."""
    ts = traj.times()
    with open(path, "w") as fh:
        fh.write("t,x\n")
        for t, x in zip(ts, traj.xs):
            fh.write(f"{t:.17g},{x:.17g}\n")


def interpolate(grid: DenseGrid, t: float) -> float:
    """Solution value at time t from the internal grid.

    History evaluation for t < 0, exact node values on the grid, cubic
    Hermite in between.  Raises LookupRangeError outside
    [-(tau1+tau2), t_final].
    """
    if t > grid.t_final + 1e-12 * max(1.0, abs(grid.t_final)):
        raise LookupRangeError(
            f"t={t:g} is beyond the computed span (t_final={grid.t_final:g})")
    if t < -grid.delay_span - 1e-12 * max(1.0, grid.delay_span):
        raise LookupRangeError(
            f"t={t:g} precedes the history interval [-{grid.delay_span:g}, 0]")
    if t <= 0.0:
        return grid.history(t)
    q = t / grid.h
    i = int(q)
    if abs(q - round(q)) < 1e-9:
        return float(grid.xs[min(int(round(q)), grid.xs.size - 1)])
    th = q - i
    x0, x1 = grid.xs[i], grid.xs[i + 1]
    f0, f1 = grid.fs[i], grid.fs[i + 1]
    omt = 1.0 - th
    h00 = (1.0 + 2.0 * th) * omt * omt
    h10 = th * omt * omt
    h01 = th * th * (3.0 - 2.0 * th)
    h11 = th * th * (th - 1.0)
    return h00 * x0 + h01 * x1 + grid.h * (h10 * f0 + h11 * f1)


def integrate(p: ModelParams, hist: HistorySpec, cfg: SolverConfig,
              keep_dense: bool = True) -> Trajectory:
    """Integrate the (possibly controlled) sine-feedback system.

    Requires alpha = 1; fractional orders go through
    :mod:`sinedde.fractional`.  Raises DivergenceError with the blow-up time
    when the state leaves [-1e6, 1e6] or turns non-finite.
    """
    if p.alpha != 1.0:
        raise ParameterError(
            "integrate handles alpha = 1 only; use integrate_frac for 0 < alpha < 1")
    cfg.check_delays(p)
    hist.check_span(p.delay_span)

    kind, value, hts, hxs = hist_kernel_args(hist)
    n_steps = cfg.n_steps()
    xs, fs, blow = _kernels.integrate_scalar(
        -(p.gamma + p.mu), p.k, -p.decayed_k, 1,
        p.tau1, p.delay_span, cfg.h, n_steps, hist(0.0),
        kind, value, hts, hxs, BLOW_UP_LIMIT)
    if blow >= 0:
        raise DivergenceError(blow * cfg.h)

    return _record(xs, fs, p, hist, cfg, keep_dense)


def integrate_controlled(p: ModelParams, hist: HistorySpec,
                         cfg: SolverConfig, keep_dense: bool = True) -> Trajectory:
    """Same as :func:`integrate` but insists on an active control gain."""
    if p.mu <= 0:
        raise ParameterError("integrate_controlled expects mu > 0")
    return integrate(p, hist, cfg, keep_dense=keep_dense)


def _record(xs, fs, p, hist, cfg, keep_dense) -> Trajectory:
    rec = np.ascontiguousarray(xs[::cfg.record_stride])
    h_rec = cfg.h * cfg.record_stride
    tidx = min(math.ceil(cfg.transient / h_rec - 1e-12), rec.size - 1) if cfg.transient > 0 else 0
    dense = DenseGrid(cfg.h, xs, fs, hist, p.delay_span) if keep_dense else None
    return Trajectory(t0=0.0, h_record=h_rec, xs=rec, params=p,
                      transient_index=max(tidx, 0), dense=dense)


def local_extrema(traj: Trajectory, from_index: int = 0) -> list[tuple[float, float, bool]]:
    """Strict interior local extrema of the recorded samples.

    Three-point comparison; a plateau run between opposite slopes counts
    once, at its midpoint.  Returns (time, value, is_max) tuples.
    """
    xs = traj.xs[from_index:]
    if xs.size < 3:
        raise AnalysisError("need at least 3 samples past from_index")
    d = np.diff(xs)
    nz = np.nonzero(d)[0]
    out = []
    for a, b in zip(nz[:-1], nz[1:]):
        rising = d[a] > 0
        if rising != (d[b] > 0):
            mid = (a + 1 + b) // 2
            t = traj.t0 + (from_index + mid) * traj.h_record
            out.append((float(t), float(xs[mid]), bool(rising)))
    return out
