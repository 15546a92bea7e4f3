"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Same signatures, same arithmetic; used when the extension is not built or
when ``CHEBMEAS_PURE=1`` is set.
"""

import math

import numpy as np

GOLDEN_ITERS = 60
INVPHI = 0.6180339887498949


def _absprod(phis, t):
    t = np.asarray(t, dtype=np.float64)
    p = np.ones_like(t)
    for phi in phis:
        p = p * (2.0 * np.sin(0.5 * (t - phi)))
    return np.abs(p)


def _bisect(phis, h, lo, hi, lo_above, tol):
    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    lo_above = np.asarray(lo_above, dtype=bool)
    while lo.size and np.max(hi - lo) > tol:
        active = hi - lo > tol
        mid = 0.5 * (lo + hi)
        same = (_absprod(phis, mid) >= h) == lo_above
        lo = np.where(active & same, mid, lo)
        hi = np.where(active & ~same, mid, hi)
    return 0.5 * (lo + hi)


def _golden(phis, a, b, sign):
    a = np.array(a, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc = sign * _absprod(phis, c)
    fd = sign * _absprod(phis, d)
    for _ in range(GOLDEN_ITERS):
        left = fc >= fd
        a, b = np.where(left, a, c), np.where(left, d, b)
        c_new = np.where(left, b - INVPHI * (b - a), d)
        d_new = np.where(left, c, a + INVPHI * (b - a))
        fc_new = np.where(left, sign * _absprod(phis, c_new), fd)
        fd_new = np.where(left, fc, sign * _absprod(phis, d_new))
        c, d, fc, fd = c_new, d_new, fc_new, fd_new
    arg = 0.5 * (a + b)
    return _absprod(phis, arg), arg


def eval_zeros(phis, scale, ts):
    ts = np.asarray(ts, dtype=np.float64)
    p = np.full_like(ts, scale)
    for phi in phis:
        p = p * (2.0 * np.sin(0.5 * (ts - phi)))
    return p


def eval_trig(a, b, ts):
    ts = np.asarray(ts, dtype=np.float64)
    c = np.cos(ts)
    s = np.sin(ts)
    x2 = 2.0 * c
    u1 = np.zeros_like(ts)
    u2 = np.zeros_like(ts)
    v1 = np.zeros_like(ts)
    v2 = np.zeros_like(ts)
    for k in range(len(a) - 1, 0, -1):
        u1, u2 = a[k] + x2 * u1 - u2, u1
        v1, v2 = b[k] + x2 * v1 - v2, v1
    return 0.5 * a[0] + u1 * c - u2 + v1 * s


def level_measure(phis, h, n_grid, tol):
    phis = np.asarray(phis, dtype=np.float64)
    dt = 2.0 * math.pi / n_grid
    idx = np.arange(n_grid)
    ta = idx * dt
    v = _absprod(phis, ta)
    above = v >= h
    v_next = np.roll(v, -1)
    v_prev = np.roll(v, 1)
    above_next = np.roll(above, -1)

    total = dt * np.count_nonzero(above & above_next)

    cross = above != above_next
    if cross.any():
        lo = ta[cross]
        c = _bisect(phis, h, lo, lo + dt, above[cross], tol)
        falling = above[cross]
        total += np.sum(np.where(falling, c - lo, lo + dt - c))

    peaks = ~above & (v >= v_prev) & (v > v_next)
    if peaks.any():
        lo = ta[peaks] - dt
        hi = ta[peaks] + dt
        best, arg = _golden(phis, lo, hi, 1)
        hit = best >= h
        if hit.any():
            right = _bisect(phis, h, arg[hit], hi[hit], np.ones(hit.sum(), bool), tol)
            left = _bisect(phis, h, lo[hit], arg[hit], np.zeros(hit.sum(), bool), tol)
            total += np.sum(right - left)

    dips = above & (v <= v_prev) & (v < v_next)
    if dips.any():
        lo = ta[dips] - dt
        hi = ta[dips] + dt
        best, arg = _golden(phis, lo, hi, -1)
        hit = best < h
        if hit.any():
            right = _bisect(phis, h, arg[hit], hi[hit], np.zeros(hit.sum(), bool), tol)
            left = _bisect(phis, h, lo[hit], arg[hit], np.ones(hit.sum(), bool), tol)
            total -= np.sum(right - left)
    return float(total)


def sup_abs(phis, lo, hi, n_grid):
    phis = np.asarray(phis, dtype=np.float64)
    dt = (hi - lo) / (n_grid - 1)
    ts = lo + np.arange(n_grid) * dt
    v = _absprod(phis, ts)
    i = int(np.argmax(v))
    best, where = float(v[i]), float(ts[i])
    inner = np.arange(1, n_grid - 1)
    peaks = inner[(v[1:-1] >= v[:-2]) & (v[1:-1] >= v[2:])]
    if peaks.size:
        vals, args = _golden(phis, lo + (peaks - 1) * dt, lo + (peaks + 1) * dt, 1)
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, where = float(vals[j]), float(args[j])
    return best, where
