"""Caputo fractional-order integration (0 < alpha <= 1).

Adams-Bashforth-Moulton predictor-corrector on a uniform grid: the
predictor uses fractional rectangle weights, the corrector fractional
trapezoid weights, with one corrector pass per step.  The memory
convolution starts at t = 0; pre-zero values enter only through the delayed
lookups, which use linear interpolation (fractional solutions have limited
smoothness at t = 0, so higher-order interpolation buys nothing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DivergenceError, ParameterError
from .integrate import BLOW_UP_LIMIT, Trajectory, hist_kernel_args
from .model import HistorySpec, ModelParams


@dataclass(frozen=True)
class FracSolverConfig:
    """Settings for the fractional solver.

    ``memory_steps`` truncates the memory convolution to that many most
    recent steps; 0 keeps the full O(N^2) memory.  A truncated window must
    still cover at least 10*max(tau1+tau2, 1) time units.
    """

    t_end: float
    h: float = 0.005
    transient: float = 0.0
    record_stride: int = 1
    memory_steps: int = 0

    def __post_init__(self):
        if self.h <= 0:
            raise ParameterError("step size must be positive")
        if self.t_end <= self.h:
            raise ParameterError("t_end must exceed the step size")
        if self.transient < 0:
            raise ParameterError("transient must be nonnegative")
        if self.record_stride < 1:
            raise ParameterError("record_stride must be >= 1")
        if self.memory_steps < 0:
            raise ParameterError("memory_steps must be >= 0 (0 = full memory)")

    def n_steps(self) -> int:
        return int(round(self.t_end / self.h))

    def check_memory(self, p: ModelParams):
        if self.memory_steps > 0:
            need = 10.0 * max(p.delay_span, 1.0) / self.h
            if self.memory_steps < need:
                raise ParameterError(
                    f"truncated memory window ({self.memory_steps} steps) must "
                    f"cover 10*max(tau1+tau2, 1) time units ({need:.0f} steps)")


def integrate_frac(p: ModelParams, hist: HistorySpec,
                   cfg: FracSolverConfig) -> Trajectory:
    """Integrate the Caputo fractional model D^alpha x = rhs(x, delays).

    At alpha = 1 the scheme reduces to a classical trapezoid
    predictor-corrector and agrees with the RK4 solver to O(h^2).  Raises
    DivergenceError with the blow-up time on runaway states.
    """
    if not 0.0 < p.alpha <= 1.0:
        raise ParameterError("fractional order must satisfy 0 < alpha <= 1")
    cfg.check_memory(p)
    hist.check_span(p.delay_span)

    kind, value, hts, hxs = hist_kernel_args(hist)
    xs, blow = _kernels.frac_integrate(
        p.gamma, p.k, p.decayed_k, p.mu,
        p.tau1, p.delay_span, p.alpha, cfg.h, cfg.n_steps(), cfg.memory_steps,
        kind, value, hts, hxs, hist(0.0), BLOW_UP_LIMIT)
    if blow >= 0:
        raise DivergenceError(blow * cfg.h)

    rec = np.ascontiguousarray(xs[::cfg.record_stride])
    h_rec = cfg.h * cfg.record_stride
    tidx = 0
    if cfg.transient > 0:
        tidx = min(math.ceil(cfg.transient / h_rec - 1e-12), rec.size - 1)
    return Trajectory(t0=0.0, h_record=h_rec, xs=rec, params=p,
                      transient_index=max(tidx, 0), dense=None)
