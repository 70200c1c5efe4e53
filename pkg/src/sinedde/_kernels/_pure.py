"""Pure-Python/numpy fallback kernels.

Same call signatures and the same arithmetic ordering as the compiled
extension in ``_core.pyx``; selected automatically when the extension is
unavailable (or when SINEDDE_PURE_PYTHON is set).  The hot loops here are
plain Python and considerably slower, which is what ``benchmarks/`` measures.
"""

import math

import numpy as np

BACKEND = "pure"

HIST_CONSTANT = 0
HIST_SAMPLED = 1


def _hist_eval(t, kind, value, ts, xs):
    if kind == HIST_CONSTANT:
        return value
    n = ts.shape[0]
    if t <= ts[0]:
        return xs[0]
    if t >= ts[n - 1]:
        return xs[n - 1]
    lo, hi = 0, n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ts[mid] <= t:
            lo = mid
        else:
            hi = mid
    w = (t - ts[lo]) / (ts[lo + 1] - ts[lo])
    return xs[lo] + w * (xs[lo + 1] - xs[lo])


def _grid_lookup(tq, h, xs, fs, m, hist_kind, hist_value, hist_ts, hist_xs):
    """Delayed-state value at time tq given m completed nodes (0..m)."""
    if tq <= 0.0:
        return _hist_eval(tq, hist_kind, hist_value, hist_ts, hist_xs)
    q = tq / h
    i = int(q)
    if i >= m:
        # beyond the last completed node (only when a delay < h): first-order
        # extrapolation from the newest node
        return xs[m] + fs[m] * (tq - m * h)
    th = q - i
    x0 = xs[i]
    x1 = xs[i + 1]
    f0 = fs[i]
    f1 = fs[i + 1]
    omt = 1.0 - th
    h00 = (1.0 + 2.0 * th) * omt * omt
    h10 = th * omt * omt
    h01 = th * th * (3.0 - 2.0 * th)
    h11 = th * th * (th - 1.0)
    return h00 * x0 + h01 * x1 + h * (h10 * f0 + h11 * f1)


def integrate_scalar(a, b, c, nonlinear, d1, d2, h, n_steps, x0,
                     hist_kind, hist_value, hist_ts, hist_xs, blow_up):
    """Fixed-step RK4 for x' = a*x + b*g(x(t-d1)) + c*g(x(t-d2)).

    g is sin when ``nonlinear`` else the identity.  Returns the full node
    grid (xs, fs) and the index of the first runaway node (-1 if none).
    """
    xs = np.empty(n_steps + 1)
    fs = np.empty(n_steps + 1)

    if nonlinear:
        def rhs(x, xd1, xd2):
            return a * x + b * math.sin(xd1) + c * math.sin(xd2)
    else:
        def rhs(x, xd1, xd2):
            return a * x + b * xd1 + c * xd2

    def look(tq, m):
        return _grid_lookup(tq, h, xs, fs, m,
                            hist_kind, hist_value, hist_ts, hist_xs)

    xs[0] = x0
    fs[0] = rhs(x0, look(-d1, 0), look(-d2, 0))
    half = 0.5 * h
    for n in range(n_steps):
        t = n * h
        x = xs[n]
        k1 = fs[n]
        k2 = rhs(x + half * k1, look(t + half - d1, n), look(t + half - d2, n))
        k3 = rhs(x + half * k2, look(t + half - d1, n), look(t + half - d2, n))
        k4 = rhs(x + h * k3, look(t + h - d1, n), look(t + h - d2, n))
        xn = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        xs[n + 1] = xn
        tn = (n + 1) * h
        fs[n + 1] = rhs(xn, look(tn - d1, n), look(tn - d2, n))
        if not math.isfinite(xn) or abs(xn) > blow_up:
            return xs, fs, n + 1
    return xs, fs, -1


def integrate_pair(gamma, k, ek, delta, d1, d2, h, n_steps,
                   h1_kind, h1_value, h1_ts, h1_xs, x1_0,
                   h2_kind, h2_value, h2_ts, h2_xs, x2_0, blow_up):
    """RK4 for the coupled master-slave pair with coupling +delta*(x1-x2)."""
    x1s = np.empty(n_steps + 1)
    f1s = np.empty(n_steps + 1)
    x2s = np.empty(n_steps + 1)
    f2s = np.empty(n_steps + 1)

    def rhs1(x, xd1, xd2):
        return -gamma * x + k * math.sin(xd1) - ek * math.sin(xd2)

    def rhs2(x, xd1, xd2, x_master):
        return (-gamma * x + k * math.sin(xd1) - ek * math.sin(xd2)
                + delta * (x_master - x))

    def look1(tq, m):
        return _grid_lookup(tq, h, x1s, f1s, m, h1_kind, h1_value, h1_ts, h1_xs)

    def look2(tq, m):
        return _grid_lookup(tq, h, x2s, f2s, m, h2_kind, h2_value, h2_ts, h2_xs)

    x1s[0] = x1_0
    x2s[0] = x2_0
    f1s[0] = rhs1(x1_0, look1(-d1, 0), look1(-d2, 0))
    f2s[0] = rhs2(x2_0, look2(-d1, 0), look2(-d2, 0), x1_0)
    half = 0.5 * h
    for n in range(n_steps):
        t = n * h
        u = x1s[n]
        v = x2s[n]
        a1 = f1s[n]
        b1 = f2s[n]

        ud1 = look1(t + half - d1, n)
        ud2 = look1(t + half - d2, n)
        vd1 = look2(t + half - d1, n)
        vd2 = look2(t + half - d2, n)
        a2 = rhs1(u + half * a1, ud1, ud2)
        b2 = rhs2(v + half * b1, vd1, vd2, u + half * a1)
        a3 = rhs1(u + half * a2, ud1, ud2)
        b3 = rhs2(v + half * b2, vd1, vd2, u + half * a2)

        ud1 = look1(t + h - d1, n)
        ud2 = look1(t + h - d2, n)
        vd1 = look2(t + h - d1, n)
        vd2 = look2(t + h - d2, n)
        a4 = rhs1(u + h * a3, ud1, ud2)
        b4 = rhs2(v + h * b3, vd1, vd2, u + h * a3)

        un = u + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        vn = v + (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        x1s[n + 1] = un
        x2s[n + 1] = vn
        tn = (n + 1) * h
        f1s[n + 1] = rhs1(un, look1(tn - d1, n), look1(tn - d2, n))
        f2s[n + 1] = rhs2(vn, look2(tn - d1, n), look2(tn - d2, n), un)
        bad1 = not math.isfinite(un) or abs(un) > blow_up
        bad2 = not math.isfinite(vn) or abs(vn) > blow_up
        if bad1 or bad2:
            return x1s, f1s, x2s, f2s, n + 1, (1 if bad1 else 2)
    return x1s, f1s, x2s, f2s, -1, 0


def _frac_delayed(tq, h, xs, m, hist_kind, hist_value, hist_ts, hist_xs):
    """Linear-interpolated delayed state on the fractional grid (m known nodes)."""
    if tq <= 0.0:
        return _hist_eval(tq, hist_kind, hist_value, hist_ts, hist_xs)
    q = tq / h
    i = int(q)
    if i >= m:
        return xs[m]
    w = q - i
    return xs[i] + w * (xs[i + 1] - xs[i])


def frac_integrate(gamma, k, ek, mu, d1, d2, alpha, h, n_steps, mem_steps,
                   hist_kind, hist_value, hist_ts, hist_xs, x0, blow_up):
    """Caputo fractional Adams-Bashforth-Moulton predictor-corrector.

    Fractional-rectangle predictor, fractional-trapezoid corrector, one
    corrector pass per step; delayed lookups by linear interpolation.
    ``mem_steps`` truncates the memory convolution (0 keeps full memory).
    """
    xs = np.empty(n_steps + 1)
    fs = np.empty(n_steps + 1)

    ga1 = math.gamma(alpha + 1.0)
    ga2 = math.gamma(alpha + 2.0)
    h_a1 = h ** alpha / ga1
    h_a2 = h ** alpha / ga2

    # b[m] = (m+1)^alpha - m^alpha           (rectangle weights)
    # c[m] = (m+2)^(a+1) - 2(m+1)^(a+1) + m^(a+1)   (trapezoid weights, j >= 1)
    ms = np.arange(n_steps + 2, dtype=float)
    pow_a = ms ** alpha
    pow_a1 = ms ** (alpha + 1.0)
    b = pow_a[1:] - pow_a[:-1]
    c = pow_a1[2:] - 2.0 * pow_a1[1:-1] + pow_a1[:-2]

    def rhs(x, xd1, xd2):
        return -(gamma + mu) * x + k * math.sin(xd1) - ek * math.sin(xd2)

    def delayed(tq, m):
        return _frac_delayed(tq, h, xs, m, hist_kind, hist_value, hist_ts, hist_xs)

    xs[0] = x0
    fs[0] = rhs(x0, delayed(-d1, 0), delayed(-d2, 0))

    for n in range(n_steps):
        tn1 = (n + 1) * h
        j0 = 0 if mem_steps <= 0 else max(0, n + 1 - mem_steps)

        # predictor: x0 + h^a/G(a+1) * sum_j b[n-j] f_j
        fseg = fs[j0:n + 1]
        bseg = b[:n + 1 - j0][::-1]
        pred = x0 + h_a1 * float(np.dot(fseg, bseg))

        xd1 = delayed(tn1 - d1, n)
        xd2 = delayed(tn1 - d2, n)
        f_pred = rhs(pred, xd1, xd2)

        # corrector: x0 + h^a/G(a+2) * (f_pred + a0*f_0 + sum_{j>=1} c[n-j] f_j)
        acc = f_pred
        if j0 == 0:
            a0 = pow_a1[n] - (n - alpha) * pow_a[n + 1]
            acc += a0 * fs[0]
            j1 = 1
        else:
            j1 = j0
        if n >= j1:
            cseg = c[:n + 1 - j1][::-1]
            acc += float(np.dot(fs[j1:n + 1], cseg))
        xn = x0 + h_a2 * acc

        xs[n + 1] = xn
        fs[n + 1] = rhs(xn, xd1, xd2)
        if not math.isfinite(xn) or abs(xn) > blow_up:
            return xs, n + 1
    return xs, -1


def wolf_nearest(pts, i, theiler, j_max, min_sep):
    """Index and distance of the nearest neighbor of pts[i].

    Candidates j in [0, j_max] with |j - i| > theiler and distance > min_sep.
    Returns (-1, 0.0) when no candidate exists.
    """
    n = j_max + 1
    d2 = np.sum((pts[:n] - pts[i]) ** 2, axis=1)
    lo = max(0, i - theiler)
    hi = min(n, i + theiler + 1)
    d2[lo:hi] = np.inf
    d2[d2 <= min_sep * min_sep] = np.inf
    j = int(np.argmin(d2))
    if not np.isfinite(d2[j]):
        return -1, 0.0
    return j, math.sqrt(d2[j])


def wolf_replacement(pts, i, dirv, eps_lo, eps_hi, cos_min, theiler, j_max,
                     min_sep):
    """Candidate replacement neighbors for the Wolf renormalization step.

    Returns (j_sep, d_sep, j_cos, d_cos):
      j_sep - min-separation candidate within [eps_lo, eps_hi] whose angle to
              ``dirv`` satisfies cos >= cos_min (-1 if none);
      j_cos - max-cosine candidate with separation in (min_sep, eps_hi]
              (-1 if none).
    """
    n = j_max + 1
    diff = pts[:n] - pts[i]
    d2 = np.sum(diff * diff, axis=1)
    lo = max(0, i - theiler)
    hi = min(n, i + theiler + 1)
    d2[lo:hi] = np.inf

    dnorm = math.sqrt(float(np.dot(dirv, dirv)))
    best_sep_j = -1
    best_sep_d = 0.0
    best_cos_j = -1
    best_cos_d = 0.0
    best_cos = -2.0
    lo2 = eps_lo * eps_lo
    hi2 = eps_hi * eps_hi
    min2 = min_sep * min_sep

    cand = np.nonzero((d2 > min2) & (d2 <= hi2))[0]
    for j in cand:
        dj = math.sqrt(d2[j])
        cosj = float(np.dot(diff[j], dirv)) / (dj * dnorm) if dnorm > 0 else 1.0
        if d2[j] >= lo2 and cosj >= cos_min:
            if best_sep_j < 0 or dj < best_sep_d:
                best_sep_j = int(j)
                best_sep_d = dj
        if cosj > best_cos:
            best_cos = cosj
            best_cos_j = int(j)
            best_cos_d = dj
    return best_sep_j, best_sep_d, best_cos_j, best_cos_d
