"""The body ``V(h) = {x : w(x) >= h}`` in R^m and its slices along the diagonal.

Here ``w(x) = prod_j 2|sin(x_j/2)|``. A line ``lambda(t) = x + (t - x_1) E``
with ``E = (1, ..., 1)`` crosses the period cube in at most ``m`` lattice
cubes; the measure of the slice decomposes over those cubes. Zero angles in
this module follow the ``sin((t + x_j)/2)`` orientation; the bridge to the
``sin((t - phi_j)/2)`` form used elsewhere is ``phi_j = x_1 - x_j`` (a rotation
of ``-x``).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .levelset import INVPHI, SampleGrid, level_set
from .trigpoly import TWO_PI, ZeroForm

HYPER_TOL = 1e-9


def w_eval(x):
    """``prod_j 2|sin(x_j/2)|`` along the last axis."""
    x = np.asarray(x, dtype=float)
    return np.prod(2.0 * np.abs(np.sin(0.5 * x)), axis=-1)


def _s(x):
    return 2.0 * np.sin(0.5 * x)


def midpoint_convexity_check(x, y):
    """``prod s((x+y)/2) >= sqrt(prod s(x) prod s(y))`` for points of the open cube ``(0, 2pi)^m``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for p in (x, y):
        if np.any(p <= 0.0) or np.any(p >= TWO_PI):
            raise DomainError("coordinates must lie strictly inside (0, 2pi)")
    lhs = float(np.prod(_s(0.5 * (x + y))))
    rhs = math.sqrt(float(np.prod(_s(x))) * float(np.prod(_s(y))))
    return lhs >= rhs - 1e-12


# --- lines and cubes -------------------------------------------------------

@dataclass(frozen=True)
class LinePoint:
    """Anchor ``x`` of the line ``lambda(t) = x + (t - x_1) E``."""

    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))

    @property
    def m(self):
        return len(self.x)

    def at(self, t):
        t = np.asarray(t, dtype=float)
        x = np.array(self.x)
        return x + (t[..., None] - x[0])

    @property
    def offsets(self):
        """``x_i - x_1``, so that ``lambda(t)_i = t + offsets_i``."""
        return tuple(v - self.x[0] for v in self.x)


@dataclass(frozen=True)
class LatticeCube:
    """Half-open cube ``prod_i [2 pi k_i, 2 pi (k_i + 1))`` with ``k_1 = 0``."""

    k: tuple

    def __post_init__(self):
        k = tuple(int(v) for v in self.k)
        if not k or k[0] != 0:
            raise DomainError("lattice cube index must have k_1 = 0")
        object.__setattr__(self, "k", k)

    def contains(self, p):
        p = np.asarray(p, dtype=float)
        lo = TWO_PI * np.array(self.k)
        return bool(np.all(p >= lo) and np.all(p < lo + TWO_PI))


@dataclass(frozen=True)
class BodySlice:
    """Parameter intervals ``[a, b)`` in ``[0, 2pi)`` where ``w(lambda(t)) >= h``."""

    h: float
    intervals: tuple

    @property
    def measure(self):
        return math.fsum(b - a for a, b in self.intervals)


def line_cube_intersections(x):
    """Cubes met by ``lambda(t)``, ``t in [0, 2pi)``, with the parameter interval spent in each.

    The intervals share breakpoints and partition ``[0, 2pi)`` exactly.
    """
    line = x if isinstance(x, LinePoint) else LinePoint(x)
    if line.m < 2:
        raise DomainError("line-cube intersections need m >= 2")
    off = line.offsets
    k = [math.floor(o / TWO_PI) for o in off]
    k[0] = 0
    r = [TWO_PI * (ki + 1) - o for ki, o in zip(k, off)]
    r[0] = TWO_PI
    breaks = sorted({ri for ri in r if ri < TWO_PI})
    out = []
    lo = 0.0
    for tp in breaks + [TWO_PI]:
        out.append((LatticeCube(tuple(k)), (lo, tp)))
        for i, ri in enumerate(r):
            if ri == tp:
                k[i] += 1
        lo = tp
    return out


# --- slice measures ---------------------------------------------------------

def _check(x, h):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise DomainError("x must be a point of R^m")
    if abs(float(np.sum(x))) > HYPER_TOL:
        raise DomainError(f"x must satisfy sum x = 0, got {float(np.sum(x)):.3g}")
    if not 0.0 < h < 2.0:
        raise DomainError(f"h must lie in (0, 2), got {h}")
    return x


def _slice_form(x):
    """``t -> w(lambda(t))`` as a zero form in the ``sin((t - phi)/2)`` convention."""
    return ZeroForm(tuple(float(x[0] - v) for v in x), 1.0)


def body_slice(x, h, grid=None):
    """Slice of ``V(h)`` along the line through ``x`` as parameter intervals in ``[0, 2pi)``."""
    x = _check(x, h)
    ls = level_set(_slice_form(x), h, grid or SampleGrid())
    pieces = []
    for start, length in ls.segments:
        end = start + length
        if end <= TWO_PI:
            pieces.append((start, end))
        else:
            pieces += [(start, TWO_PI), (0.0, end - TWO_PI)]
    return BodySlice(float(h), tuple(sorted(pieces)))


def tau(x, h, grid=None):
    """Parameter measure of ``{t in [0, 2pi) : w(lambda(t)) >= h}``."""
    return body_slice(x, h, grid).measure


def _overlap(intervals, lo, hi):
    return math.fsum(max(0.0, min(b, hi) - max(a, lo)) for a, b in intervals)


def tau_k(x, h, k, grid=None):
    """Part of :func:`tau` spent inside cube ``k``."""
    x = _check(x, h)
    k = k if isinstance(k, LatticeCube) else LatticeCube(k)
    sl = body_slice(x, h, grid)
    return math.fsum(_overlap(sl.intervals, lo, hi)
                     for cube, (lo, hi) in line_cube_intersections(x) if cube == k)


def tau_decomposition(x, h, grid=None):
    """``[(cube, tau_k)]`` over the cubes met by the line, from a single slice."""
    x = _check(x, h)
    sl = body_slice(x, h, grid)
    return [(cube, _overlap(sl.intervals, lo, hi))
            for cube, (lo, hi) in line_cube_intersections(x)]


def arc_length_measure(x, h, n_grid=8192, tol=1e-13):
    """Euclidean length of ``{p in [x, x + 2 pi E] : w(p) >= h}``.

    Parameterized by arc length ``s in [0, 2 pi sqrt(m)]`` and computed without
    the level-set engine: sampling, bisection of sign changes, and
    golden-section checks of sampled extrema for lobes between samples.
    """
    x = np.asarray(x, dtype=float)
    m = x.size
    L = TWO_PI * math.sqrt(m)
    unit = np.full(m, 1.0 / math.sqrt(m))

    def g(s):
        s = np.asarray(s, dtype=float)
        return w_eval(x + s[..., None] * unit) - h

    ds = L / n_grid
    s = np.arange(n_grid + 1) * ds
    v = g(s)
    v[-1] = v[0]

    def root(a, b):
        fa = g(a)
        while b - a > tol:
            c = 0.5 * (a + b)
            fc = g(c)
            if (fc >= 0) == (fa >= 0):
                a, fa = c, fc
            else:
                b = c
        return 0.5 * (a + b)

    def extremum(a, b, sign):
        for _ in range(80):
            c = b - INVPHI * (b - a)
            d = a + INVPHI * (b - a)
            if sign * g(c) >= sign * g(d):
                b = d
            else:
                a = c
        return 0.5 * (a + b)

    total = 0.0
    for i in range(n_grid):
        a, b = s[i], s[i + 1]
        inside_a, inside_b = v[i] >= 0, v[i + 1] >= 0
        if inside_a and inside_b:
            total += b - a
        elif inside_a != inside_b:
            c = root(a, b)
            total += (c - a) if inside_a else (b - c)
    # lobes above h or dips below h falling between samples
    for i in range(1, n_grid):
        if v[i] < 0 and v[i] >= v[i - 1] and v[i] > v[i + 1]:
            p = extremum(s[i - 1], s[i + 1], 1)
            if g(p) > 0:
                total += root(p, s[i + 1]) - root(s[i - 1], p)
        elif v[i] >= 0 and v[i] <= v[i - 1] and v[i] < v[i + 1]:
            p = extremum(s[i - 1], s[i + 1], -1)
            if g(p) < 0:
                total -= root(p, s[i + 1]) - root(s[i - 1], p)
    return total


# --- campaigns ---------------------------------------------------------------

def _report(checked, violations, max_error, **extra):
    return {"checked": int(checked), "violations": violations, "max_error": float(max_error), **extra}


def hyperplane_sample(rng, m):
    x = rng.uniform(-math.pi, math.pi, m)
    return x - x.mean()


def convexity_campaign(m, samples, seed=0):
    rng = np.random.default_rng(seed)
    bad, worst = [], 0.0
    for _ in range(samples):
        x = rng.uniform(0.0, TWO_PI, m)
        y = rng.uniform(0.0, TWO_PI, m)
        lhs = float(np.prod(_s(0.5 * (x + y))))
        rhs = math.sqrt(float(np.prod(_s(x))) * float(np.prod(_s(y))))
        worst = max(worst, rhs - lhs)
        if not midpoint_convexity_check(x, y):
            bad.append({"x": x.tolist(), "y": y.tolist()})
    return _report(samples, bad, max(worst, 0.0))


def cubes_campaign(m, samples, seed=0):
    """Cube counts in ``[1, m]``, exact partition, and ``count = m`` iff breakpoints are distinct."""
    rng = np.random.default_rng(seed)
    bad, counts = [], []
    for _ in range(samples):
        x = rng.uniform(-4 * math.pi, 4 * math.pi, m)
        cubes = line_cube_intersections(x)
        ivs = [iv for _, iv in cubes]
        off = LinePoint(x).offsets
        r = {TWO_PI * (math.floor(o / TWO_PI) + 1) - o for o in off[1:]}
        distinct = len(r) == m - 1 and TWO_PI not in r
        ok = (1 <= len(cubes) <= m
              and ivs[0][0] == 0.0 and ivs[-1][1] == TWO_PI
              and all(a[1] == b[0] for a, b in zip(ivs, ivs[1:]))
              and all(a < b for a, b in ivs)
              and (len(cubes) == m) == distinct)
        # the midpoint of each interval really lies in its cube
        line = LinePoint(x)
        ok = ok and all(c.contains(line.at(0.5 * (a + b))) for c, (a, b) in cubes)
        counts.append(len(cubes))
        if not ok:
            bad.append({"x": x.tolist(), "count": len(cubes)})
    return _report(samples, bad, 0.0, max_count=max(counts), min_count=min(counts))


def decomposition_campaign(m, h, samples, seed=0, grid=None):
    rng = np.random.default_rng(seed)
    bad, worst = [], 0.0
    for _ in range(samples):
        x = hyperplane_sample(rng, m)
        parts = tau_decomposition(x, h, grid)
        err = abs(math.fsum(v for _, v in parts) - tau(x, h, grid))
        nonzero = sum(v > 0 for _, v in parts)
        worst = max(worst, err)
        if err > 1e-9 or nonzero > m:
            bad.append({"x": x.tolist(), "error": err, "nonzero": nonzero})
    return _report(samples, bad, worst)


def equivalence_check(m, h, samples, seed=0, tol=1e-8, grid=None):
    """``mes_1 = sqrt(m) tau`` on random hyperplane points, and ``min mes_1 >= sqrt(m) delta``."""
    from .closedforms import delta

    if not 0.0 < h < 2.0:
        raise DomainError(f"h must lie in (0, 2), got {h}")
    rng = np.random.default_rng(seed)
    root_m = math.sqrt(m)
    bad, worst, least = [], 0.0, math.inf
    for _ in range(samples):
        x = hyperplane_sample(rng, m)
        t = tau(x, h, grid)
        mes = arc_length_measure(x, h)
        err = abs(mes - root_m * t)
        worst = max(worst, err)
        least = min(least, mes)
        if err > tol:
            bad.append({"x": x.tolist(), "mes1": mes, "sqrt_m_tau": root_m * t})
    bound = root_m * delta(m, h)
    if least < bound - tol:
        bad.append({"min_mes1": least, "bound": bound})
    return _report(samples, bad, worst, min_mes1=least, bound=bound)


def structure_check(m, h, cfg=None, touch_tol=1e-4):
    """Level set of the oracle's best ``g_m`` at ``h``: one segment and ``m - 1`` touch points."""
    from .oracle import minimize_measure

    if m > 6:
        raise DomainError("structure check is limited to m <= 6")
    res = minimize_measure(m, h, cfg)
    ls = level_set(ZeroForm(res.phis, 1.0), h, SampleGrid(touch_tol=touch_tol))
    ok = ls.segment_count == 1 and ls.touch_count == m - 1
    violations = [] if ok else [{"segments": ls.segment_count, "touch_points": ls.touch_count}]
    return _report(1, violations, 0.0, phis=list(res.phis), value=res.value,
                   level_set=ls.to_json(), budget_exhausted=res.budget_exhausted)
