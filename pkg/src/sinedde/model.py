"""Model definition: parameters, history specification, right-hand side, equilibria.

The system is a scalar delay differential equation with two discrete delays
and sinusoidal feedback,

    x'(t) = -gamma*x(t) + k*sin(x(t - tau1))
            - k*exp(-gamma*tau2)*sin(x(t - tau1 - tau2)) - mu*x(t),

where mu >= 0 is an optional linear state-feedback gain (mu = 0 gives the
uncontrolled system).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

_EQ_GRID_POINTS = 10_000  # bracketing grid for equilibrium search


@dataclass(frozen=True)
class ModelParams:
    """Parameter tuple shared by every variant of the model.

    Attributes
    ----------
    gamma : float
        Linear decay rate (1/time).
    k : float
        Feedback amplitude of the sine nonlinearity.
    tau1 : float
        First delay (time, >= 0).
    tau2 : float
        Second delay (time, >= 0); the delayed terms act at tau1 and tau1+tau2.
    alpha : float
        Fractional derivative order, 0 < alpha <= 1.  alpha = 1 is the
        classical first-order system.
    mu : float
        Control gain of the -mu*x(t) feedback term, >= 0.
    delta : float
        Master-slave coupling gain used by the synchronization harness.
    """

    gamma: float
    k: float
    tau1: float
    tau2: float
    alpha: float = 1.0
    mu: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        vals = (self.gamma, self.k, self.tau1, self.tau2,
                self.alpha, self.mu, self.delta)
        if not all(math.isfinite(v) for v in vals):
            raise ParameterError("all model parameters must be finite")
        if self.tau1 < 0 or self.tau2 < 0:
            raise ParameterError("delays must be nonnegative")
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterError("fractional order must satisfy 0 < alpha <= 1")
        if self.mu < 0:
            raise ParameterError("control gain mu must be nonnegative")

    @property
    def delay_span(self) -> float:
        """Total span of delayed lookups, tau1 + tau2."""
        return self.tau1 + self.tau2

    @property
    def decayed_k(self) -> float:
        """Effective amplitude k*exp(-gamma*tau2) of the second delayed term."""
        return self.k * math.exp(-self.gamma * self.tau2)


@dataclass(frozen=True, eq=False)
class HistorySpec:
    """Prescribed solution on the pre-initial interval [-(tau1+tau2), 0].

    Either a constant value or a sampled curve interpolated linearly.
    Build with :meth:`constant` or :meth:`sampled`.
    """

    kind: str  # "constant" | "sampled"
    value: float = 0.0
    ts: np.ndarray = field(default=None, repr=False)
    xs: np.ndarray = field(default=None, repr=False)

    @classmethod
    def constant(cls, value: float) -> "HistorySpec":
        if not math.isfinite(value):
            raise ParameterError("history value must be finite")
        return cls(kind="constant", value=float(value))

    @classmethod
    def sampled(cls, ts, xs) -> "HistorySpec":
        ts = np.ascontiguousarray(ts, dtype=float)
        xs = np.ascontiguousarray(xs, dtype=float)
        if ts.ndim != 1 or ts.shape != xs.shape or ts.size < 2:
            raise ParameterError("sampled history needs matching 1-d (t, x) grids")
        if not (np.all(np.diff(ts) > 0)):
            raise ParameterError("sampled history grid must be strictly increasing")
        if not (np.all(np.isfinite(ts)) and np.all(np.isfinite(xs))):
            raise ParameterError("sampled history must be finite")
        return cls(kind="sampled", ts=ts, xs=xs)

    def check_span(self, span: float):
        """Raise unless the history covers [-span, 0]."""
        if self.kind == "sampled":
            slack = 1e-12 * max(1.0, span)
            if self.ts[0] > -span + slack:
                raise ParameterError(
                    f"sampled history starts at t={self.ts[0]:g}, "
                    f"must cover [-{span:g}, 0]")
            if self.ts[-1] < -slack:
                raise ParameterError("sampled history must extend to t=0")

    def __call__(self, t: float) -> float:
        """Evaluate the history at a (nonpositive) time."""
        if self.kind == "constant":
            return self.value
        return float(np.interp(t, self.ts, self.xs))


def eval_rhs(x_now: float, x_d1: float, x_d12: float, p: ModelParams) -> float:
    """Right-hand side at one point.

    ``x_d1`` and ``x_d12`` are the delayed states x(t - tau1) and
    x(t - tau1 - tau2).  The control term -mu*x_now is folded in; mu = 0
    recovers the uncontrolled system.
    """
    return (-(p.gamma + p.mu) * x_now
            + p.k * math.sin(x_d1)
            - p.decayed_k * math.sin(x_d12))


def equilibrium_residual(x: float, p: ModelParams) -> float:
    """Value of -gamma*x + k*(1 - exp(-gamma*tau2))*sin(x) (zero at equilibria)."""
    return -p.gamma * x + p.k * (1.0 - math.exp(-p.gamma * p.tau2)) * math.sin(x)


def find_equilibria(p: ModelParams, search_interval=(-10.0, 10.0),
                    tol: float = 1e-10) -> list[float]:
    """All equilibria of the uncontrolled system inside ``search_interval``.

    Roots of -gamma*x + k*(1 - exp(-gamma*tau2))*sin(x) are bracketed by a
    sign change on a uniform grid and refined by bisection until
    |f(x*)| < tol.  The origin is always an equilibrium and is included
    whenever the interval contains it.

    Returns the roots sorted ascending.
    """
    lo, hi = float(search_interval[0]), float(search_interval[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ParameterError("search interval must be finite with lo < hi")
    if tol <= 0:
        raise ParameterError("tolerance must be positive")

    grid = np.linspace(lo, hi, _EQ_GRID_POINTS)
    c = p.k * (1.0 - math.exp(-p.gamma * p.tau2))
    fs = -p.gamma * grid + c * np.sin(grid)

    roots = []
    for i in range(grid.size - 1):
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0:
            roots.append(float(grid[i]))
            continue
        if fa * fb < 0.0:
            a, b = float(grid[i]), float(grid[i + 1])
            while True:
                m = 0.5 * (a + b)
                fm = equilibrium_residual(m, p)
                if abs(fm) < tol or (b - a) < 1e-15 * max(1.0, abs(m)):
                    roots.append(m)
                    break
                if fa * fm <= 0.0:
                    b = m
                else:
                    a, fa = m, fm
    if fs[-1] == 0.0:
        roots.append(float(grid[-1]))
    if lo <= 0.0 <= hi:
        roots.append(0.0)

    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or abs(r - out[-1]) > 1e-6:
            out.append(r)
        elif abs(r) < abs(out[-1]):  # prefer the exact origin over a grid twin
            out[-1] = r
    return out
