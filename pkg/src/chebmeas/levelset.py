"""Sets ``{t in T : |f(t)| >= h}`` on the torus and their measure.

A level set is reported as disjoint closed segments plus isolated touch
points (tangencies of ``|f|`` with the threshold). Segment ends are located
by bisection between grid samples; grid-local extrema are polished by
golden-section search so that lobes and tangencies falling between samples
are not lost.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidThreshold
from .trigpoly import TWO_PI, as_function

INVPHI = 0.6180339887498949


@dataclass(frozen=True)
class SampleGrid:
    N: int = 8192
    bisect_tol: float = 1e-10
    touch_tol: float = 1e-7

    def __post_init__(self):
        if self.N < 64:
            raise ValueError("grid needs at least 64 points")
        if self.bisect_tol <= 0 or self.touch_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class LevelSet:
    h: float
    segments: tuple = ()
    touch_points: tuple = ()
    warnings: tuple = ()
    measure: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "measure", math.fsum(length for _, length in self.segments))

    @property
    def segment_count(self):
        return len(self.segments)

    @property
    def touch_count(self):
        return len(self.touch_points)

    def contains(self, t):
        """Membership of ``t`` in the union of segments (touch points excluded)."""
        t = t % TWO_PI
        for start, length in self.segments:
            if (t - start) % TWO_PI <= length:
                return True
        return False

    def to_json(self):
        return {
            "h": self.h,
            "segments": [[s, length] for s, length in self.segments],
            "touch_points": list(self.touch_points),
            "measure": self.measure,
            "warnings": list(self.warnings),
        }


def _bisect(f, h, lo, hi, lo_above, tol):
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    lo_above = np.asarray(lo_above, dtype=bool)
    while lo.size and np.max(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        same = (np.abs(f(mid)) >= h) == lo_above
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def _golden(f, a, b, sign, iters=80):
    """Vectorized golden-section search maximizing ``sign*|f|`` on each ``[a_i, b_i]``."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc = sign * np.abs(f(c))
    fd = sign * np.abs(f(d))
    for _ in range(iters):
        left = fc >= fd
        a, b = np.where(left, a, c), np.where(left, d, b)
        c_new = np.where(left, b - INVPHI * (b - a), d)
        d_new = np.where(left, c, a + INVPHI * (b - a))
        fc, fd = (np.where(left, sign * np.abs(f(c_new)), fd),
                  np.where(left, fc, sign * np.abs(f(d_new))))
        c, d = c_new, d_new
    arg = 0.5 * (a + b)
    return np.abs(f(arg)), arg


def level_set(f, h, grid=None):
    """Level set ``{t : |f(t)| >= h}`` of a continuous 2pi-periodic function.

    ``f`` is a vectorized callable or any polynomial object from
    :mod:`chebmeas.trigpoly`.
    """
    if not h > 0:
        raise InvalidThreshold(f"threshold must be positive, got {h}")
    grid = grid or SampleGrid()
    f = as_function(f)
    N, tol, band = grid.N, grid.bisect_tol, grid.touch_tol
    dt = TWO_PI / N
    t = np.arange(N) * dt
    v = np.abs(f(t))
    above = v >= h
    v_prev, v_next = np.roll(v, 1), np.roll(v, -1)

    rises, falls, touches = [], [], []

    cross = np.flatnonzero(above != np.roll(above, -1))
    if cross.size:
        c = _bisect(f, h, t[cross], t[cross] + dt, above[cross], tol)
        rises += list(c[~above[cross]])
        falls += list(c[above[cross]])

    peaks = np.flatnonzero(~above & (v >= v_prev) & (v > v_next))
    if peaks.size:
        lo, hi = t[peaks] - dt, t[peaks] + dt
        best, arg = _golden(f, lo, hi, 1)
        touch = np.abs(best - h) <= band
        touches += list(arg[touch])
        hidden = (best - h > band)
        if hidden.any():
            k = int(hidden.sum())
            rises += list(_bisect(f, h, lo[hidden], arg[hidden], np.zeros(k, bool), tol))
            falls += list(_bisect(f, h, arg[hidden], hi[hidden], np.ones(k, bool), tol))

    dips = np.flatnonzero(above & (v <= v_prev) & (v < v_next))
    if dips.size:
        lo, hi = t[dips] - dt, t[dips] + dt
        best, arg = _golden(f, lo, hi, -1)
        hidden = h - best > band
        if hidden.any():
            k = int(hidden.sum())
            falls += list(_bisect(f, h, lo[hidden], arg[hidden], np.ones(k, bool), tol))
            rises += list(_bisect(f, h, arg[hidden], hi[hidden], np.zeros(k, bool), tol))

    segments = []
    if not rises and not falls:
        if above.all():
            segments.append((0.0, TWO_PI))
    else:
        events = sorted([(x % TWO_PI, 1) for x in rises] + [(x % TWO_PI, 0) for x in falls])
        # rotate so the list starts with a rise
        first = next(i for i, (_, kind) in enumerate(events) if kind == 1)
        events = events[first:] + events[:first]
        for i, (x, kind) in enumerate(events):
            if kind != 1:
                continue
            y = events[(i + 1) % len(events)][0]
            segments.append((x, (y - x) % TWO_PI))

    kept, warnings = [], []
    for start, length in segments:
        if length < 3 * dt:
            lo = np.array([start])
            best, arg = _golden(f, lo, lo + length, 1)
            if best[0] - h <= band or length < 10 * tol:
                touches.append(float(arg[0]))
                continue
            warnings.append(f"GridTooCoarse: segment at {start:.6g} spans {length / dt:.2f} cells")
        elif length < 10 * tol:
            touches.append(start + 0.5 * length)
            continue
        kept.append((float(start), float(length)))

    touches = sorted(float(x % TWO_PI) for x in touches)
    dedup = []
    for x in touches:
        if not dedup or x - dedup[-1] > 1e-6:
            dedup.append(x)
    if len(dedup) > 1 and dedup[0] + TWO_PI - dedup[-1] <= 1e-6:
        dedup.pop()

    return LevelSet(float(h), tuple(sorted(kept)), tuple(dedup), tuple(warnings))


def mu(f, grid=None):
    """Measure of ``{t : |f(t)| >= 1}``."""
    return level_set(f, 1.0, grid).measure


def chi(phis, h, n_grid=8192, tol=1e-12):
    """Measure of ``{t : |prod_j 2 sin((t - phi_j)/2)| >= h}`` (compiled kernel)."""
    if not h > 0:
        raise InvalidThreshold(f"threshold must be positive, got {h}")
    return kernels.level_measure(phis, h, n_grid, tol)


def riemann_measure(f, h, N=8192):
    """Crude grid count ``(2pi/N) * #{|f| >= h}``; an independent cross-check."""
    t = np.arange(N) * (TWO_PI / N)
    return TWO_PI / N * int(np.count_nonzero(np.abs(as_function(f)(t)) >= h))
