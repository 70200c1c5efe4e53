"""Largest Lyapunov exponent from scalar time series.

Delay embedding with the lag chosen at the first minimum of the mutual
information and the dimension by false nearest neighbors, then Wolf-style
divergence tracking: follow a reference point and its nearest neighbor,
accumulate log separation growth over fixed evolution intervals, and
renormalize onto a replacement neighbor chosen to minimize the orientation
change.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from . import _kernels
from .errors import AnalysisError
from .integrate import Trajectory

# Wolf tracking defaults, scaled to attractor size
EVOLVE_TIME = 1.0          # time units per divergence measurement
ANGLE_MAX = 0.3            # rad, replacement orientation threshold
EPS_FRAC = 0.01            # annulus inner radius as fraction of extent
EPS_HI_FACTOR = 5.0        # annulus outer radius = factor * inner
MIN_SEP_FRAC = 1e-10       # ignore separations below this fraction of extent

MIN_SERIES_FOR_REPORT = 5000
MIN_EMBEDDED_POINTS = 100


@dataclass(frozen=True)
class EmbeddingParams:
    """Delay-embedding parameters: dimension, lag (samples), Theiler window."""

    m: int
    lag: int
    theiler: int = 0

    def __post_init__(self):
        if self.m < 1 or self.lag < 1 or self.theiler < 0:
            raise AnalysisError("embedding needs m >= 1, lag >= 1, theiler >= 0")


@dataclass(frozen=True)
class LyapunovReport:
    """Estimate plus diagnostics.

    ``fit_diagnostic`` is the mean absolute deviation of the per-interval
    divergence rates from the reported exponent; large values mean the
    log-divergence curve is far from a single slope.
    """

    lambda_max: float
    embedding: EmbeddingParams
    n_points: int
    fit_diagnostic: float


def embed(series, e: EmbeddingParams) -> np.ndarray:
    """Delay-embed a scalar series: point i = (x_i, x_{i+d}, ..., x_{i+(m-1)d})."""
    series = np.asarray(series, dtype=float)
    n = series.size
    span = (e.m - 1) * e.lag
    if n <= span + 1:
        raise AnalysisError(
            f"series of length {n} too short for m={e.m}, lag={e.lag}")
    count = n - span
    cols = [series[j * e.lag: j * e.lag + count] for j in range(e.m)]
    return np.ascontiguousarray(np.column_stack(cols))


def mutual_information_lag(series, max_lag: int, n_bins: int = 16) -> int:
    """Lag at the first local minimum of the mutual information.

    The histogram uses equiprobable marginal bins.  Falls back to
    ``max_lag`` when no interior minimum shows up.
    """
    series = np.asarray(series, dtype=float)
    if max_lag < 1:
        raise AnalysisError("max_lag must be >= 1")
    if series.size < 10 * max_lag:
        raise AnalysisError("series must be at least 10*max_lag long")
    if np.ptp(series) == 0.0:
        raise AnalysisError("constant series has no mutual information structure")

    edges = np.quantile(series, np.linspace(0.0, 1.0, n_bins + 1))
    edges = np.unique(edges)
    nb = edges.size - 1
    if nb < 2:
        raise AnalysisError("series too degenerate for equiprobable binning")
    idx = np.clip(np.searchsorted(edges, series, side="right") - 1, 0, nb - 1)

    def mi(lag: int) -> float:
        a = idx[:series.size - lag]
        b = idx[lag:]
        joint = np.bincount(a * nb + b, minlength=nb * nb).astype(float)
        joint /= joint.sum()
        pa = joint.reshape(nb, nb).sum(axis=1)
        pb = joint.reshape(nb, nb).sum(axis=0)
        outer = np.outer(pa, pb).ravel()
        mask = joint > 0
        return float(np.sum(joint[mask] * np.log(joint[mask] / outer[mask])))

    vals = [mi(0)] + [mi(l) for l in range(1, max_lag + 1)]
    for l in range(1, max_lag):
        if vals[l] < vals[l - 1] and vals[l] <= vals[l + 1]:
            return l
    return max_lag


def false_nearest_neighbors(series, lag: int, m_max: int = 8,
                            rtol: float = 15.0, atol: float = 2.0) -> int:
    """Smallest embedding dimension with a false-neighbor fraction below 1%.

    Classic two-criterion test: a neighbor is false when the extra
    coordinate stretches the pair by more than ``rtol``, or when the
    (m+1)-dimensional distance exceeds ``atol`` series standard deviations.
    Returns ``m_max`` (with a warning) if the fraction never drops below 1%.
    """
    series = np.asarray(series, dtype=float)
    sigma = float(series.std())
    if sigma == 0.0:
        raise AnalysisError("constant series cannot be embedded")

    for m in range(1, m_max + 1):
        span_next = m * lag  # extra coordinate index offset for dimension m+1
        pts = embed(series, EmbeddingParams(m=m, lag=lag))
        count = series.size - span_next
        if count < 10:
            raise AnalysisError("series too short for the FNN sweep")
        pts = pts[:count]

        tree = cKDTree(pts)
        dist, nn = tree.query(pts, k=2)
        rd = dist[:, 1]
        j = nn[:, 1]
        extra = np.abs(series[np.arange(count) + span_next] - series[j + span_next])

        with np.errstate(divide="ignore", invalid="ignore"):
            crit1 = np.where(rd > 0, extra / rd, np.where(extra > 0, np.inf, 0.0))
        crit2 = np.sqrt(rd * rd + extra * extra) / sigma
        false = (crit1 > rtol) | (crit2 > atol)
        if false.mean() < 0.01:
            return m
    warnings.warn("false-neighbor fraction never dropped below 1%; "
                  f"returning m_max={m_max}", stacklevel=2)
    return m_max


def auto_embedding(series, dt: float) -> EmbeddingParams:
    """Mutual-information lag, then FNN dimension, Theiler window m*lag."""
    max_lag = max(1, min(200, series.size // 10))
    lag = mutual_information_lag(series, max_lag)
    m = false_nearest_neighbors(series, lag)
    return EmbeddingParams(m=m, lag=lag, theiler=m * lag)


def lyapunov_from_series(series, dt: float, e: EmbeddingParams | None = None,
                         horizon: float | None = None) -> LyapunovReport:
    """Wolf divergence-tracking estimate on a raw scalar series."""
    series = np.asarray(series, dtype=float)
    if e is None:
        e = auto_embedding(series, dt)

    pts = embed(series, e)
    n_pts = pts.shape[0]
    if n_pts <= MIN_EMBEDDED_POINTS:
        raise AnalysisError(
            f"{n_pts} embedded points; need more than {MIN_EMBEDDED_POINTS}")

    extent = float(np.ptp(series))
    if extent == 0.0:
        raise AnalysisError("flat series has no divergence structure")
    eps_lo = EPS_FRAC * extent
    eps_hi = EPS_HI_FACTOR * eps_lo
    min_sep = MIN_SEP_FRAC * extent
    cos_min = math.cos(ANGLE_MAX)

    evolve_steps = max(1, int(round(EVOLVE_TIME / dt)))
    evolve_time = evolve_steps * dt
    j_max = n_pts - 1 - evolve_steps
    if j_max < 1:
        raise AnalysisError("series shorter than one evolution interval")

    i = 0
    j, d0 = _kernels.wolf_nearest(pts, i, e.theiler, j_max, min_sep)
    if j < 0:
        raise AnalysisError("no usable nearest neighbor (series degenerate?)")

    sum_log = 0.0
    total_time = 0.0
    rates = []
    while i + evolve_steps <= n_pts - 1:
        if horizon is not None and total_time >= horizon:
            break
        i2 = i + evolve_steps
        j2 = j + evolve_steps
        d1 = float(np.linalg.norm(pts[i2] - pts[j2]))
        if d0 > 0.0 and d1 > 0.0:
            sum_log += math.log(d1 / d0)
            total_time += evolve_time
            rates.append(math.log(d1 / d0) / evolve_time)
        i = i2
        if i + evolve_steps > n_pts - 1:
            break
        dirv = np.ascontiguousarray(pts[j2] - pts[i])
        js, ds, jc, dc = _kernels.wolf_replacement(
            pts, i, dirv, eps_lo, eps_hi, cos_min, e.theiler, j_max, min_sep)
        if js >= 0:
            j, d0 = js, ds
        elif jc >= 0:
            j, d0 = jc, dc
        else:
            j, d0 = j2, d1
        if j + evolve_steps > n_pts - 1:
            break

    if total_time <= 0.0:
        raise AnalysisError("no valid divergence intervals accumulated")
    lam = sum_log / total_time
    diag = float(np.mean(np.abs(np.asarray(rates) - lam))) if rates else math.inf
    return LyapunovReport(lambda_max=lam, embedding=e, n_points=n_pts,
                          fit_diagnostic=diag)


def largest_lyapunov(traj: Trajectory, e: EmbeddingParams | None = None,
                     horizon: float | None = None) -> LyapunovReport:
    """Largest Lyapunov exponent of a trajectory's post-transient samples."""
    series = traj.post_transient()
    if series.size < MIN_SERIES_FOR_REPORT:
        raise AnalysisError(
            f"post-transient series has {series.size} samples; "
            f"need at least {MIN_SERIES_FOR_REPORT}")
    return lyapunov_from_series(series, traj.h_record, e=e, horizon=horizon)
