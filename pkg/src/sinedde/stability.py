"""Characteristic-equation analysis and the linear comparison system.

Covers the delay-independent stability classification, the critical control
gain at which the controlled equilibrium changes stability, the
synchronization gain condition, and integration of the linear comparison
system that bounds the synchronization error.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import _kernels
from .errors import DivergenceError, ParameterError
from .integrate import BLOW_UP_LIMIT, SolverConfig, Trajectory, _record, hist_kernel_args
from .model import HistorySpec, ModelParams

_OMEGA_GRID = 100_000
_MU_TIE = 1e-6


class StabilityClass(Enum):
    """Delay-independent classification of the zero equilibrium."""

    STABLE_ALL_DELAYS = "stable-all-delays"
    UNSTABLE_ALL_DELAYS = "unstable-all-delays"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CriticalGain:
    """Stability threshold of the controlled system.

    ``omega_star`` is the crossing frequency of the root that determines the
    threshold; 0.0 marks a real root crossing through the origin.
    ``residual`` is |real-part defect| + |imaginary-part defect| of the
    characteristic boundary conditions at (mu_star, omega_star).
    """

    mu_star: float
    omega_star: float
    residual: float


def check_delay_independent(p: ModelParams) -> StabilityClass:
    """Classify the zero equilibrium independent of the delay values.

    Stable for all delays when gamma > 2|k|; unstable for all delays when
    gamma < 0; indeterminate otherwise (the delay-dependent region where all
    the interesting dynamics lives).
    """
    if p.gamma < 0:
        return StabilityClass.UNSTABLE_ALL_DELAYS
    if p.gamma > 2.0 * abs(p.k):
        return StabilityClass.STABLE_ALL_DELAYS
    return StabilityClass.INDETERMINATE


def char_residual(lam: complex, p: ModelParams) -> complex:
    """Characteristic function of the linearized controlled system.

    lam + (gamma + mu) - k*exp(-lam*tau1)
        + k*exp(-gamma*tau2)*exp(-lam*(tau1 + tau2))

    Roots are the characteristic exponents; the equilibrium is
    asymptotically stable when all roots have negative real part.
    """
    return (lam + (p.gamma + p.mu)
            - p.k * cmath.exp(-lam * p.tau1)
            + p.decayed_k * cmath.exp(-lam * p.delay_span))


def _imag_defect(w: float, p: ModelParams) -> float:
    # 0 = -w - k sin(w tau1) + k e^{-g t2} sin(w (tau1+tau2)) rearranged
    return (w + p.k * math.sin(w * p.tau1)
            - p.decayed_k * math.sin(w * p.delay_span))


def _gain_at(w: float, p: ModelParams) -> float:
    # real-part balance solved for mu
    return (-p.gamma + p.k * math.cos(w * p.tau1)
            - p.decayed_k * math.cos(w * p.delay_span))


def find_critical_gain(p: ModelParams, omega_max: float = 10.0) -> CriticalGain | None:
    """Critical control gain mu* above which the origin is stabilized.

    Boundary crossings are candidate pairs (mu, omega) where a
    characteristic root sits on the imaginary axis: the real root through
    the origin (omega = 0, at mu = k*(1 - exp(-gamma*tau2)) - gamma) and
    every positive root of the imaginary-part balance located by a sign
    scan over (0, omega_max] refined with bisection.  The threshold is the
    largest candidate gain; ties within 1e-6 report the lowest omega.

    Returns None when no candidate gain is positive (already stable, or no
    crossing in range).
    """
    if omega_max <= 0:
        raise ParameterError("omega_max must be positive")

    candidates: list[tuple[float, float]] = []  # (omega, mu)

    mu_zero = p.k * (1.0 - math.exp(-p.gamma * p.tau2)) - p.gamma
    candidates.append((0.0, mu_zero))

    ws = np.linspace(omega_max / _OMEGA_GRID, omega_max, _OMEGA_GRID)
    fs = (ws + p.k * np.sin(ws * p.tau1)
          - p.decayed_k * np.sin(ws * p.delay_span))
    for i in range(ws.size - 1):
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0:
            candidates.append((float(ws[i]), _gain_at(float(ws[i]), p)))
            continue
        if fa * fb < 0.0:
            a, b = float(ws[i]), float(ws[i + 1])
            va = fa
            for _ in range(200):
                m = 0.5 * (a + b)
                vm = _imag_defect(m, p)
                if va * vm <= 0.0:
                    b = m
                else:
                    a, va = m, vm
                if b - a < 1e-14:
                    break
            w = 0.5 * (a + b)
            candidates.append((w, _gain_at(w, p)))
    if fs[-1] == 0.0:
        candidates.append((float(ws[-1]), _gain_at(float(ws[-1]), p)))

    best_mu = max(mu for _, mu in candidates)
    if best_mu <= 0.0:
        return None
    w_star, mu_star = min(
        ((w, mu) for w, mu in candidates if mu >= best_mu - _MU_TIE),
        key=lambda t: t[0])
    real_defect = abs(-mu_star - p.gamma
                      + p.k * math.cos(w_star * p.tau1)
                      - p.decayed_k * math.cos(w_star * p.delay_span))
    residual = real_defect + abs(_imag_defect(w_star, p))
    return CriticalGain(mu_star=mu_star, omega_star=w_star, residual=residual)


def check_sync_condition(p: ModelParams, delta: float) -> bool:
    """Sufficient delay-independent synchronization condition gamma + delta > 2|k|."""
    return p.gamma + delta > 2.0 * abs(p.k)


def simulate_comparison(p: ModelParams, delta: float, z0: float,
                        cfg: SolverConfig) -> Trajectory:
    """Integrate the linear comparison system

        z'(t) = -(gamma + delta) z(t) + |k| z(t - tau1) + |k| z(t - tau1 - tau2)

    from the constant history z0.  Its decay dominates |e(t)| of the
    synchronized pair whenever z0 bounds the error over the history interval.
    """
    cfg.check_delays(p)
    hist = HistorySpec.constant(z0)
    kind, value, hts, hxs = hist_kernel_args(hist)
    xs, fs, blow = _kernels.integrate_scalar(
        -(p.gamma + delta), abs(p.k), abs(p.k), 0,
        p.tau1, p.delay_span, cfg.h, cfg.n_steps(), z0,
        kind, value, hts, hxs, BLOW_UP_LIMIT)
    if blow >= 0:
        raise DivergenceError(blow * cfg.h)
    return _record(xs, fs, replace(p, delta=delta), hist, cfg, keep_dense=True)
