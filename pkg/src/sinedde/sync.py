"""Master-slave synchronization harness.

The master runs free; the slave carries the linear feedback +delta*(x1-x2).
Both are co-integrated as one two-component state so the coupling sees
synchronous stage values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import DivergenceError, LookupRangeError
from .integrate import BLOW_UP_LIMIT, SolverConfig, hist_kernel_args
from .model import HistorySpec, ModelParams


@dataclass(frozen=True, eq=False)
class SyncRecord:
    """Paired master/slave samples and their error e = x1 - x2."""

    t0: float
    h_record: float
    x1: np.ndarray
    x2: np.ndarray
    e: np.ndarray
    params: ModelParams
    delta: float

    def times(self) -> np.ndarray:
        return self.t0 + self.h_record * np.arange(self.x1.size)


def simulate_pair(p: ModelParams, delta: float, hist1: HistorySpec,
                  hist2: HistorySpec, cfg: SolverConfig) -> SyncRecord:
    """Co-integrate master and slave with coupling gain ``delta``.

    Raises DivergenceError tagged with the diverging component.
    """
    cfg.check_delays(p)
    hist1.check_span(p.delay_span)
    hist2.check_span(p.delay_span)

    k1, v1, ts1, xs1 = hist_kernel_args(hist1)
    k2, v2, ts2, xs2 = hist_kernel_args(hist2)
    x1s, _, x2s, _, blow, comp = _kernels.integrate_pair(
        p.gamma, p.k, p.decayed_k, delta,
        p.tau1, p.delay_span, cfg.h, cfg.n_steps(),
        k1, v1, ts1, xs1, hist1(0.0),
        k2, v2, ts2, xs2, hist2(0.0),
        BLOW_UP_LIMIT)
    if blow >= 0:
        raise DivergenceError(blow * cfg.h,
                              component="master" if comp == 1 else "slave")

    x1r = np.ascontiguousarray(x1s[::cfg.record_stride])
    x2r = np.ascontiguousarray(x2s[::cfg.record_stride])
    return SyncRecord(t0=0.0, h_record=cfg.h * cfg.record_stride,
                      x1=x1r, x2=x2r, e=x1r - x2r,
                      params=replace(p, delta=delta), delta=delta)


def error_decay_table(rec: SyncRecord, times) -> list[tuple[float, float]]:
    """|e| sampled at the requested times (nearest record node)."""
    t_max = rec.t0 + rec.h_record * (rec.e.size - 1)
    out = []
    for t in times:
        t = float(t)
        if t < rec.t0 - 1e-12 or t > t_max + 1e-12:
            raise LookupRangeError(
                f"t={t:g} outside the record span [{rec.t0:g}, {t_max:g}]")
        i = int(round((t - rec.t0) / rec.h_record))
        i = min(max(i, 0), rec.e.size - 1)
        out.append((t, float(abs(rec.e[i]))))
    return out
