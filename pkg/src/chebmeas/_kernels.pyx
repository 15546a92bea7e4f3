# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: products of half-angle sines, Clenshaw sums, level-set
measure and sampled suprema.

Every function here has a numpy twin in ``_fallback`` with the same signature
and the same arithmetic, so results agree to rounding.
"""

import numpy as np

from libc.math cimport sin, cos, fabs, M_PI

DEF GOLDEN_ITERS = 60
DEF INVPHI = 0.6180339887498949


cdef inline double _absprod(const double[::1] phis, double t) nogil:
    cdef Py_ssize_t j
    cdef double p = 1.0
    for j in range(phis.shape[0]):
        p *= 2.0 * sin(0.5 * (t - phis[j]))
    return fabs(p)


cdef double _bisect(const double[::1] phis, double h, double lo, double hi,
                    bint lo_above, double tol) nogil:
    # invariant: (|g(lo)| >= h) == lo_above and the opposite at hi
    cdef double mid
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (_absprod(phis, mid) >= h) == lo_above:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


cdef double _golden(const double[::1] phis, double a, double b, int sign,
                    double* arg) nogil:
    # maximizes sign*|g| on [a, b]; returns the |g| value there
    cdef double c = b - INVPHI * (b - a)
    cdef double d = a + INVPHI * (b - a)
    cdef double fc = sign * _absprod(phis, c)
    cdef double fd = sign * _absprod(phis, d)
    cdef int it
    for it in range(GOLDEN_ITERS):
        if fc >= fd:
            b = d
            d = c
            fd = fc
            c = b - INVPHI * (b - a)
            fc = sign * _absprod(phis, c)
        else:
            a = c
            c = d
            fc = fd
            d = a + INVPHI * (b - a)
            fd = sign * _absprod(phis, d)
    arg[0] = 0.5 * (a + b)
    return _absprod(phis, arg[0])


def eval_zeros(const double[::1] phis, double scale, const double[::1] ts):
    """``scale * prod_j 2 sin((t - phi_j)/2)`` for every t."""
    cdef Py_ssize_t i, j, n = ts.shape[0], m = phis.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double p, t
    with nogil:
        for i in range(n):
            t = ts[i]
            p = scale
            for j in range(m):
                p *= 2.0 * sin(0.5 * (t - phis[j]))
            o[i] = p
    return out


def eval_trig(const double[::1] a, const double[::1] b, const double[::1] ts):
    """``a0/2 + sum a_k cos kt + b_k sin kt`` by Clenshaw's recurrence."""
    cdef Py_ssize_t i, k, n = a.shape[0] - 1, npts = ts.shape[0]
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] o = out
    cdef double t, c, s, x2, u0, u1, u2, v0, v1, v2
    with nogil:
        for i in range(npts):
            t = ts[i]
            c = cos(t)
            s = sin(t)
            x2 = 2.0 * c
            u1 = 0.0
            u2 = 0.0
            v1 = 0.0
            v2 = 0.0
            for k in range(n, 0, -1):
                u0 = a[k] + x2 * u1 - u2
                v0 = b[k] + x2 * v1 - v2
                u2 = u1
                u1 = u0
                v2 = v1
                v1 = v0
            o[i] = 0.5 * a[0] + u1 * c - u2 + v1 * s
    return out


def level_measure(const double[::1] phis, double h, Py_ssize_t n_grid, double tol):
    """Measure of ``{t in [0, 2pi): |prod 2 sin((t - phi_j)/2)| >= h}``.

    Crossings are bisected to ``tol``; lobes that cross the threshold between
    two grid points (and dips that fall below it) are found by refining every
    grid-local extremum.
    """
    cdef Py_ssize_t i, ip, im, n = n_grid
    cdef double dt = 2.0 * M_PI / n
    cdef double total = 0.0, c, ta, tb, best, arg, lo, hi
    cdef bint ai, aj
    v = np.empty(n, dtype=np.float64)
    cdef double[::1] vv = v
    with nogil:
        for i in range(n):
            vv[i] = _absprod(phis, i * dt)
        for i in range(n):
            ip = i + 1 if i + 1 < n else 0
            im = i - 1 if i > 0 else n - 1
            ai = vv[i] >= h
            aj = vv[ip] >= h
            ta = i * dt
            tb = ta + dt
            if ai and aj:
                total += dt
            elif ai != aj:
                c = _bisect(phis, h, ta, tb, ai, tol)
                if ai:
                    total += c - ta
                else:
                    total += tb - c
            # hidden lobe above h around a sub-threshold grid maximum
            if (not ai) and vv[i] >= vv[im] and vv[i] > vv[ip]:
                lo = ta - dt
                hi = tb
                best = _golden(phis, lo, hi, 1, &arg)
                if best >= h:
                    total += (_bisect(phis, h, arg, hi, True, tol)
                              - _bisect(phis, h, lo, arg, False, tol))
            # hidden dip below h around an above-threshold grid minimum
            elif ai and vv[i] <= vv[im] and vv[i] < vv[ip]:
                lo = ta - dt
                hi = tb
                best = _golden(phis, lo, hi, -1, &arg)
                if best < h:
                    total -= (_bisect(phis, h, arg, hi, False, tol)
                              - _bisect(phis, h, lo, arg, True, tol))
    return total


def sup_abs(const double[::1] phis, double lo, double hi, Py_ssize_t n_grid):
    """Max of ``|prod 2 sin((t - phi_j)/2)|`` over ``[lo, hi]``.

    Samples ``n_grid`` points including both ends and polishes every interior
    grid-local maximum by golden-section search. Returns ``(value, argmax)``.
    """
    cdef Py_ssize_t i, n = n_grid
    cdef double dt = (hi - lo) / (n - 1)
    cdef double best = -1.0, where = lo, val, arg
    v = np.empty(n, dtype=np.float64)
    cdef double[::1] vv = v
    with nogil:
        for i in range(n):
            vv[i] = _absprod(phis, lo + i * dt)
        for i in range(n):
            if vv[i] > best:
                best = vv[i]
                where = lo + i * dt
        for i in range(1, n - 1):
            if vv[i] >= vv[i - 1] and vv[i] >= vv[i + 1]:
                val = _golden(phis, lo + (i - 1) * dt, lo + (i + 1) * dt, 1, &arg)
                if val > best:
                    best = val
                    where = arg
    return best, where
