# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: RK4 delay stepping, fractional predictor-corrector,
Wolf neighbor searches.  Mirrors the pure-Python backend in ``_pure.py``."""

from libc.math cimport sin, sqrt, fabs, isfinite, tgamma, pow

import numpy as np

BACKEND = "compiled"

HIST_CONSTANT = 0
HIST_SAMPLED = 1


cdef inline double _hist_eval(double t, int kind, double value,
                              double[::1] ts, double[::1] xs) nogil:
    cdef Py_ssize_t n, lo, hi, mid
    cdef double w
    if kind == 0:
        return value
    n = ts.shape[0]
    if t <= ts[0]:
        return xs[0]
    if t >= ts[n - 1]:
        return xs[n - 1]
    lo = 0
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ts[mid] <= t:
            lo = mid
        else:
            hi = mid
    w = (t - ts[lo]) / (ts[lo + 1] - ts[lo])
    return xs[lo] + w * (xs[lo + 1] - xs[lo])


cdef inline double _grid_lookup(double tq, double h, double[::1] xs,
                                double[::1] fs, Py_ssize_t m,
                                int hist_kind, double hist_value,
                                double[::1] hist_ts, double[::1] hist_xs) nogil:
    cdef double q, th, x0, x1, f0, f1, omt, h00, h10, h01, h11
    cdef Py_ssize_t i
    if tq <= 0.0:
        return _hist_eval(tq, hist_kind, hist_value, hist_ts, hist_xs)
    q = tq / h
    i = <Py_ssize_t> q
    if i >= m:
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


cdef inline double _rhs(double x, double xd1, double xd2, double a, double b,
                        double c, int nonlinear) nogil:
    if nonlinear:
        return a * x + b * sin(xd1) + c * sin(xd2)
    return a * x + b * xd1 + c * xd2


def integrate_scalar(double a, double b, double c, int nonlinear,
                     double d1, double d2, double h, Py_ssize_t n_steps,
                     double x0, int hist_kind, double hist_value,
                     double[::1] hist_ts, double[::1] hist_xs, double blow_up):
    """Fixed-step RK4 for x' = a*x + b*g(x(t-d1)) + c*g(x(t-d2))."""
    xs_arr = np.empty(n_steps + 1)
    fs_arr = np.empty(n_steps + 1)
    cdef double[::1] xs = xs_arr
    cdef double[::1] fs = fs_arr
    cdef double t, tn, x, xn, k1, k2, k3, k4, half, xa, xb
    cdef Py_ssize_t n, blow = -1

    half = 0.5 * h
    xs[0] = x0
    fs[0] = _rhs(x0,
                 _grid_lookup(-d1, h, xs, fs, 0, hist_kind, hist_value, hist_ts, hist_xs),
                 _grid_lookup(-d2, h, xs, fs, 0, hist_kind, hist_value, hist_ts, hist_xs),
                 a, b, c, nonlinear)
    with nogil:
        for n in range(n_steps):
            t = n * h
            x = xs[n]
            k1 = fs[n]
            xa = _grid_lookup(t + half - d1, h, xs, fs, n, hist_kind, hist_value, hist_ts, hist_xs)
            xb = _grid_lookup(t + half - d2, h, xs, fs, n, hist_kind, hist_value, hist_ts, hist_xs)
            k2 = _rhs(x + half * k1, xa, xb, a, b, c, nonlinear)
            k3 = _rhs(x + half * k2, xa, xb, a, b, c, nonlinear)
            xa = _grid_lookup(t + h - d1, h, xs, fs, n, hist_kind, hist_value, hist_ts, hist_xs)
            xb = _grid_lookup(t + h - d2, h, xs, fs, n, hist_kind, hist_value, hist_ts, hist_xs)
            k4 = _rhs(x + h * k3, xa, xb, a, b, c, nonlinear)
            xn = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            xs[n + 1] = xn
            tn = (n + 1) * h
            xa = _grid_lookup(tn - d1, h, xs, fs, n, hist_kind, hist_value, hist_ts, hist_xs)
            xb = _grid_lookup(tn - d2, h, xs, fs, n, hist_kind, hist_value, hist_ts, hist_xs)
            fs[n + 1] = _rhs(xn, xa, xb, a, b, c, nonlinear)
            if not isfinite(xn) or fabs(xn) > blow_up:
                blow = n + 1
                break
    return xs_arr, fs_arr, blow


def integrate_pair(double gamma, double k, double ek, double delta,
                   double d1, double d2, double h, Py_ssize_t n_steps,
                   int h1_kind, double h1_value, double[::1] h1_ts, double[::1] h1_xs, double x1_0,
                   int h2_kind, double h2_value, double[::1] h2_ts, double[::1] h2_xs, double x2_0,
                   double blow_up):
    """RK4 for the coupled master-slave pair with coupling +delta*(x1-x2)."""
    x1_arr = np.empty(n_steps + 1)
    f1_arr = np.empty(n_steps + 1)
    x2_arr = np.empty(n_steps + 1)
    f2_arr = np.empty(n_steps + 1)
    cdef double[::1] x1s = x1_arr
    cdef double[::1] f1s = f1_arr
    cdef double[::1] x2s = x2_arr
    cdef double[::1] f2s = f2_arr
    cdef double t, tn, u, v, un, vn, half
    cdef double a1, a2, a3, a4, b1, b2, b3, b4
    cdef double ud1, ud2, vd1, vd2
    cdef Py_ssize_t n, blow = -1
    cdef int comp = 0, bad1, bad2

    half = 0.5 * h
    x1s[0] = x1_0
    x2s[0] = x2_0
    f1s[0] = (-gamma * x1_0
              + k * sin(_grid_lookup(-d1, h, x1s, f1s, 0, h1_kind, h1_value, h1_ts, h1_xs))
              - ek * sin(_grid_lookup(-d2, h, x1s, f1s, 0, h1_kind, h1_value, h1_ts, h1_xs)))
    f2s[0] = (-gamma * x2_0
              + k * sin(_grid_lookup(-d1, h, x2s, f2s, 0, h2_kind, h2_value, h2_ts, h2_xs))
              - ek * sin(_grid_lookup(-d2, h, x2s, f2s, 0, h2_kind, h2_value, h2_ts, h2_xs))
              + delta * (x1_0 - x2_0))
    with nogil:
        for n in range(n_steps):
            t = n * h
            u = x1s[n]
            v = x2s[n]
            a1 = f1s[n]
            b1 = f2s[n]

            ud1 = _grid_lookup(t + half - d1, h, x1s, f1s, n, h1_kind, h1_value, h1_ts, h1_xs)
            ud2 = _grid_lookup(t + half - d2, h, x1s, f1s, n, h1_kind, h1_value, h1_ts, h1_xs)
            vd1 = _grid_lookup(t + half - d1, h, x2s, f2s, n, h2_kind, h2_value, h2_ts, h2_xs)
            vd2 = _grid_lookup(t + half - d2, h, x2s, f2s, n, h2_kind, h2_value, h2_ts, h2_xs)
            a2 = -gamma * (u + half * a1) + k * sin(ud1) - ek * sin(ud2)
            b2 = (-gamma * (v + half * b1) + k * sin(vd1) - ek * sin(vd2)
                  + delta * ((u + half * a1) - (v + half * b1)))
            a3 = -gamma * (u + half * a2) + k * sin(ud1) - ek * sin(ud2)
            b3 = (-gamma * (v + half * b2) + k * sin(vd1) - ek * sin(vd2)
                  + delta * ((u + half * a2) - (v + half * b2)))

            ud1 = _grid_lookup(t + h - d1, h, x1s, f1s, n, h1_kind, h1_value, h1_ts, h1_xs)
            ud2 = _grid_lookup(t + h - d2, h, x1s, f1s, n, h1_kind, h1_value, h1_ts, h1_xs)
            vd1 = _grid_lookup(t + h - d1, h, x2s, f2s, n, h2_kind, h2_value, h2_ts, h2_xs)
            vd2 = _grid_lookup(t + h - d2, h, x2s, f2s, n, h2_kind, h2_value, h2_ts, h2_xs)
            a4 = -gamma * (u + h * a3) + k * sin(ud1) - ek * sin(ud2)
            b4 = (-gamma * (v + h * b3) + k * sin(vd1) - ek * sin(vd2)
                  + delta * ((u + h * a3) - (v + h * b3)))

            un = u + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
            vn = v + (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
            x1s[n + 1] = un
            x2s[n + 1] = vn
            tn = (n + 1) * h
            ud1 = _grid_lookup(tn - d1, h, x1s, f1s, n, h1_kind, h1_value, h1_ts, h1_xs)
            ud2 = _grid_lookup(tn - d2, h, x1s, f1s, n, h1_kind, h1_value, h1_ts, h1_xs)
            vd1 = _grid_lookup(tn - d1, h, x2s, f2s, n, h2_kind, h2_value, h2_ts, h2_xs)
            vd2 = _grid_lookup(tn - d2, h, x2s, f2s, n, h2_kind, h2_value, h2_ts, h2_xs)
            f1s[n + 1] = -gamma * un + k * sin(ud1) - ek * sin(ud2)
            f2s[n + 1] = -gamma * vn + k * sin(vd1) - ek * sin(vd2) + delta * (un - vn)
            bad1 = not isfinite(un) or fabs(un) > blow_up
            bad2 = not isfinite(vn) or fabs(vn) > blow_up
            if bad1 or bad2:
                blow = n + 1
                comp = 1 if bad1 else 2
                break
    return x1_arr, f1_arr, x2_arr, f2_arr, blow, comp


cdef inline double _frac_delayed(double tq, double h, double[::1] xs,
                                 Py_ssize_t m, int hist_kind, double hist_value,
                                 double[::1] hist_ts, double[::1] hist_xs) nogil:
    cdef double q, w
    cdef Py_ssize_t i
    if tq <= 0.0:
        return _hist_eval(tq, hist_kind, hist_value, hist_ts, hist_xs)
    q = tq / h
    i = <Py_ssize_t> q
    if i >= m:
        return xs[m]
    w = q - i
    return xs[i] + w * (xs[i + 1] - xs[i])


def frac_integrate(double gamma, double k, double ek, double mu,
                   double d1, double d2, double alpha, double h,
                   Py_ssize_t n_steps, Py_ssize_t mem_steps,
                   int hist_kind, double hist_value,
                   double[::1] hist_ts, double[::1] hist_xs,
                   double x0, double blow_up):
    """Caputo Adams-Bashforth-Moulton predictor-corrector (one corrector pass)."""
    xs_arr = np.empty(n_steps + 1)
    cdef double[::1] xs = xs_arr
    fs_arr = np.empty(n_steps + 1)
    cdef double[::1] fs = fs_arr

    cdef double ga1 = tgamma(alpha + 1.0)
    cdef double ga2 = tgamma(alpha + 2.0)
    cdef double h_a1 = pow(h, alpha) / ga1
    cdef double h_a2 = pow(h, alpha) / ga2

    ms_arr = np.arange(n_steps + 2, dtype=float)
    pow_a_arr = ms_arr ** alpha
    pow_a1_arr = ms_arr ** (alpha + 1.0)
    b_arr = pow_a_arr[1:] - pow_a_arr[:-1]
    c_arr = pow_a1_arr[2:] - 2.0 * pow_a1_arr[1:-1] + pow_a1_arr[:-2]
    cdef double[::1] pow_a = np.ascontiguousarray(pow_a_arr)
    cdef double[::1] pow_a1 = np.ascontiguousarray(pow_a1_arr)
    cdef double[::1] b = np.ascontiguousarray(b_arr)
    cdef double[::1] c = np.ascontiguousarray(c_arr)

    cdef double tn1, pred, f_pred, acc, a0, xn, xd1, xd2, s
    cdef Py_ssize_t n, j, j0, j1, blow = -1

    xs[0] = x0
    fs[0] = (-(gamma + mu) * x0
             + k * sin(_frac_delayed(-d1, h, xs, 0, hist_kind, hist_value, hist_ts, hist_xs))
             - ek * sin(_frac_delayed(-d2, h, xs, 0, hist_kind, hist_value, hist_ts, hist_xs)))

    with nogil:
        for n in range(n_steps):
            tn1 = (n + 1) * h
            if mem_steps <= 0:
                j0 = 0
            else:
                j0 = n + 1 - mem_steps
                if j0 < 0:
                    j0 = 0

            s = 0.0
            for j in range(j0, n + 1):
                s += b[n - j] * fs[j]
            pred = x0 + h_a1 * s

            xd1 = _frac_delayed(tn1 - d1, h, xs, n, hist_kind, hist_value, hist_ts, hist_xs)
            xd2 = _frac_delayed(tn1 - d2, h, xs, n, hist_kind, hist_value, hist_ts, hist_xs)
            f_pred = -(gamma + mu) * pred + k * sin(xd1) - ek * sin(xd2)

            acc = f_pred
            if j0 == 0:
                a0 = pow_a1[n] - (n - alpha) * pow_a[n + 1]
                acc += a0 * fs[0]
                j1 = 1
            else:
                j1 = j0
            s = 0.0
            for j in range(j1, n + 1):
                s += c[n - j] * fs[j]
            acc += s
            xn = x0 + h_a2 * acc

            xs[n + 1] = xn
            fs[n + 1] = -(gamma + mu) * xn + k * sin(xd1) - ek * sin(xd2)
            if not isfinite(xn) or fabs(xn) > blow_up:
                blow = n + 1
                break
    return xs_arr, blow


def wolf_nearest(double[:, ::1] pts, Py_ssize_t i, Py_ssize_t theiler,
                 Py_ssize_t j_max, double min_sep):
    """Nearest neighbor of pts[i] outside the Theiler window (see _pure)."""
    cdef Py_ssize_t n = j_max + 1
    cdef Py_ssize_t m = pts.shape[1]
    cdef Py_ssize_t j, q, best = -1
    cdef double d2, diff, best_d2 = 0.0
    cdef double min2 = min_sep * min_sep
    with nogil:
        for j in range(n):
            if j >= i - theiler and j <= i + theiler:
                continue
            d2 = 0.0
            for q in range(m):
                diff = pts[j, q] - pts[i, q]
                d2 += diff * diff
            if d2 <= min2:
                continue
            if best < 0 or d2 < best_d2:
                best = j
                best_d2 = d2
    if best < 0:
        return -1, 0.0
    return best, sqrt(best_d2)


def wolf_replacement(double[:, ::1] pts, Py_ssize_t i, double[::1] dirv,
                     double eps_lo, double eps_hi, double cos_min,
                     Py_ssize_t theiler, Py_ssize_t j_max, double min_sep):
    """Replacement candidates for the Wolf renormalization step (see _pure)."""
    cdef Py_ssize_t n = j_max + 1
    cdef Py_ssize_t m = pts.shape[1]
    cdef Py_ssize_t j, q
    cdef double d2, dj, diff, dot, cosj
    cdef double lo2 = eps_lo * eps_lo
    cdef double hi2 = eps_hi * eps_hi
    cdef double min2 = min_sep * min_sep
    cdef double dnorm = 0.0
    cdef Py_ssize_t best_sep_j = -1, best_cos_j = -1
    cdef double best_sep_d = 0.0, best_cos_d = 0.0, best_cos = -2.0

    for q in range(m):
        dnorm += dirv[q] * dirv[q]
    dnorm = sqrt(dnorm)

    with nogil:
        for j in range(n):
            if j >= i - theiler and j <= i + theiler:
                continue
            d2 = 0.0
            for q in range(m):
                diff = pts[j, q] - pts[i, q]
                d2 += diff * diff
            if d2 <= min2 or d2 > hi2:
                continue
            dj = sqrt(d2)
            if dnorm > 0.0:
                dot = 0.0
                for q in range(m):
                    dot += (pts[j, q] - pts[i, q]) * dirv[q]
                cosj = dot / (dj * dnorm)
            else:
                cosj = 1.0
            if d2 >= lo2 and cosj >= cos_min:
                if best_sep_j < 0 or dj < best_sep_d:
                    best_sep_j = j
                    best_sep_d = dj
            if cosj > best_cos:
                best_cos = cosj
                best_cos_j = j
                best_cos_d = dj
    return best_sep_j, best_sep_d, best_cos_j, best_cos_d
