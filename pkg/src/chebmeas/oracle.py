"""Brute-force re-derivation of the extremal values, independent of the closed forms.

The searches here never call into :mod:`chebmeas.closedforms`; tests compare
their output against it.
"""

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError
from .trigpoly import TWO_PI, circle_eval

DESK_SCALE = 8


def default_seed():
    return int(os.environ.get("CHEBMEAS_SEED", "0"))


@dataclass(frozen=True)
class SearchConfig:
    starts: int = 32
    init_step: float = None  # pi/m when None
    shrink: float = 0.5
    min_step: float = 1e-6
    seed: int = field(default_factory=default_seed)
    max_evals: int = 200_000
    grid: int = 2048
    polish_rounds: int = 8
    allow_large: bool = False

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("need at least one start")
        if not 0.0 < self.shrink < 1.0:
            raise ValueError("shrink must lie in (0, 1)")
        if self.init_step is not None and not self.min_step < self.init_step:
            raise ValueError("min_step must be below init_step")

    def step0(self, m):
        return self.init_step if self.init_step is not None else math.pi / m


@dataclass
class SearchResult:
    phis: tuple
    value: float
    evals: int
    history: list = field(default_factory=list)
    budget_exhausted: bool = False

    def to_json(self):
        return {
            "phis": list(self.phis),
            "value": self.value,
            "evals": self.evals,
            "budget_exhausted": self.budget_exhausted,
            "history": [list(x) for x in self.history],
        }


def hyperplane_basis(m):
    """Orthonormal basis (rows) of ``{x in R^m : sum x = 0}``."""
    if m == 1:
        return np.zeros((0, 1))
    # Helmert rows
    rows = []
    for k in range(1, m):
        r = np.zeros(m)
        r[:k] = 1.0
        r[k] = -k
        rows.append(r / math.sqrt(k * (k + 1)))
    return np.array(rows)


class _Budget:
    def __init__(self, objective, limit):
        self.objective = objective
        self.limit = limit
        self.evals = 0

    @property
    def exhausted(self):
        return self.evals >= self.limit

    def __call__(self, x):
        self.evals += 1
        return self.objective(x)


def _pattern_search(fun, x0, basis, cfg, step, rng, budget):
    """Compass search along ``+-basis`` with a random-rotation fallback poll."""
    x = np.array(x0, dtype=float)
    fx = fun(x)
    d = basis.shape[0]
    while step >= cfg.min_step and not budget.exhausted:
        moved = False
        dirs = basis
        for attempt in range(2):
            for v in dirs:
                for s in (1.0, -1.0):
                    if budget.exhausted:
                        return x, fx
                    y = x + s * step * v
                    fy = fun(y)
                    if fy < fx:
                        x, fx, moved = y, fy, True
                        break
                if moved:
                    break
            if moved or d == 0:
                break
            # random orthonormal directions inside the same subspace
            q, _ = np.linalg.qr(rng.standard_normal((d, d)))
            dirs = q @ basis
        if not moved:
            step *= cfg.shrink
    return x, fx


def _better(a, b):
    """Strictly smaller value wins; near-ties go to the lexicographically smaller point."""
    if b is None:
        return True
    if a[1] < b[1] - 1e-12:
        return True
    if abs(a[1] - b[1]) <= 1e-12:
        return tuple(a[0]) < tuple(b[0])
    return False


def _multistart(objective, m, cfg, sample_start, basis, canon):
    budget = _Budget(objective, cfg.max_evals)
    best = None
    history = []
    for s in range(cfg.starts):
        if budget.exhausted:
            break
        rng = np.random.default_rng([cfg.seed, s])
        x0 = sample_start(rng)
        x, fx = _pattern_search(budget, x0, basis, cfg, cfg.step0(m), rng, budget)
        cand = (canon(x), fx)
        if _better(cand, best):
            best = cand
            history.append((s, budget.evals, fx))
    # restart small polls from the winner: kinks where lobes touch the level stall a single run
    x, fx = np.array(best[0]), best[1]
    for r in range(cfg.polish_rounds):
        if budget.exhausted:
            break
        rng = np.random.default_rng([cfg.seed, cfg.starts + r])
        y, fy = _pattern_search(budget, x, basis, cfg, 0.01 * cfg.step0(m), rng, budget)
        if not fy < fx:
            break
        x, fx = y, fy
        best = (canon(x), fx)
        history.append((cfg.starts + r, budget.evals, fx))
    phis, _ = best
    value = objective(np.array(phis))
    return SearchResult(tuple(float(p) for p in phis), float(value), budget.evals,
                        history, budget.exhausted)


def _guard(m, cfg):
    if m < 1:
        raise DomainError("m must be positive")
    if m > DESK_SCALE and not cfg.allow_large:
        raise DomainError(f"m={m} above desk scale {DESK_SCALE}; set allow_large=True")


def _hyper_canon(x):
    x = np.sort(np.asarray(x, dtype=float))
    return x - x.mean()


def _hyper_start(m):
    def sample(rng):
        return _hyper_canon(rng.uniform(0.0, TWO_PI, m))
    return sample


def minimize_measure(m, h, cfg=None):
    """Search zero configurations on ``sum phi = 0`` for the least ``chi(phi, h)``."""
    cfg = cfg or SearchConfig()
    _guard(m, cfg)
    if not 0.0 < h < 2.0:
        raise DomainError(f"h must lie in (0, 2), got {h}")

    def objective(x):
        return kernels.level_measure(x, h, cfg.grid, 1e-12)

    return _multistart(objective, m, cfg, _hyper_start(m), hyperplane_basis(m), _hyper_canon)


def minimize_supnorm(m, cfg=None, n_grid=8192):
    """Search zero configurations for the least ``max_t |g_m(t; phi)|``."""
    cfg = cfg or SearchConfig()
    _guard(m, cfg)

    def objective(x):
        return kernels.sup_abs(x, 0.0, TWO_PI, n_grid)[0]

    return _multistart(objective, m, cfg, _hyper_start(m), hyperplane_basis(m), _hyper_canon)


def _intervals(Q):
    Q = [(float(a), float(b)) for a, b in Q]
    for a, b in Q:
        if not b > a:
            raise DomainError(f"interval [{a}, {b}] is empty")
    total = sum(b - a for a, b in Q)
    if not 0.0 < total <= TWO_PI + 1e-12:
        raise DomainError(f"set measure {total} outside (0, 2pi]")
    return sorted(Q), total


def e_on_set(m, Q, cfg=None, points_per_radian=1024):
    """Least ``max_{t in Q} |g_m(t; phi)|`` over unconstrained zero angles."""
    cfg = cfg or SearchConfig()
    _guard(m, cfg)
    Q, total = _intervals(Q)
    if total >= TWO_PI:
        raise DomainError("set must be a proper subset of the circle")
    sizes = [max(256, int((b - a) * points_per_radian)) for a, b in Q]

    def objective(x):
        return max(kernels.sup_abs(x, a, b, k)[0] for (a, b), k in zip(Q, sizes))

    lengths = np.array([b - a for a, b in Q])

    def sample(rng):
        # zeros inside Q, proportionally to interval length
        idx = rng.choice(len(Q), size=m, p=lengths / lengths.sum())
        return np.sort(np.array([rng.uniform(*Q[i]) for i in idx]))

    res = _multistart(objective, m, cfg, sample, np.eye(m),
                      lambda x: np.sort(np.mod(x, TWO_PI)))
    return res.value, res


def sum_functional(P):
    """``(1/m) sum_l P(e^{i theta_l})``, ``theta_l = (Psi + 2 pi l)/m``; equals ``2 e^{i Psi}``."""
    m = P.m
    if m < 1:
        raise DomainError("sum functional needs m >= 1")
    theta = (P.Psi + TWO_PI * np.arange(m)) / m
    return complex(np.mean(circle_eval(P, theta)))


# --- discrete minimax by exchange ------------------------------------------

@dataclass
class MinimaxResult:
    value: float
    coeffs: tuple
    certified: bool
    alternation: int
    active: tuple
    iterations: int
    max_error: float


def _basis_matrix(n, t):
    t = np.asarray(t, dtype=float)
    cols = [np.ones_like(t)]
    for k in range(1, n):
        cols += [np.cos(k * t), np.sin(k * t)]
    return np.stack(cols, axis=1)


def _error(n, c, t):
    return np.cos(n * np.asarray(t)) - _basis_matrix(n, t) @ c


def _extrema_runs(err):
    """Index of the largest |err| in every maximal run of constant sign."""
    sgn = np.sign(err)
    sgn[sgn == 0] = 1
    breaks = np.flatnonzero(np.diff(sgn)) + 1
    starts = np.concatenate([[0], breaks])
    ends = np.concatenate([breaks, [len(err)]])
    return [s + int(np.argmax(np.abs(err[s:e]))) for s, e in zip(starts, ends)]


def _select_reference(idx, err, size):
    idx = list(idx)
    while len(idx) > size:
        gmax = int(np.argmax(np.abs(err[idx])))
        # drop the weaker end, never the global maximum
        if gmax == 0:
            idx.pop()
        elif gmax == len(idx) - 1:
            idx.pop(0)
        elif abs(err[idx[0]]) <= abs(err[idx[-1]]):
            idx.pop(0)
        else:
            idx.pop()
    return idx


def _alternation(err, tol):
    """Length of the longest sign-alternating chain among points with |err| >= max - tol."""
    emax = np.max(np.abs(err))
    count, last = 0, 0
    pts = []
    for i in _extrema_runs(err):
        if abs(err[i]) >= emax - tol:
            s = 1 if err[i] > 0 else -1
            if s != last:
                count += 1
                last = s
                pts.append(i)
    return count, pts


def _single_exchange(ref, err, star):
    """Swap ``star`` into the sorted reference keeping the error signs alternating."""
    ref = list(ref)
    s = np.sign(err[star])
    j = int(np.searchsorted(ref, star))
    if j == 0:
        if np.sign(err[ref[0]]) == s:
            ref[0] = star
        else:
            ref = [star] + ref[:-1]
    elif j == len(ref):
        if np.sign(err[ref[-1]]) == s:
            ref[-1] = star
        else:
            ref = ref[1:] + [star]
    elif np.sign(err[ref[j - 1]]) == s:
        ref[j - 1] = star
    else:
        ref[j] = star
    return np.array(ref)


def _exchange(n, X, ref, max_iter, tol):
    d = 2 * n - 1
    signs = ((-1.0) ** np.arange(d + 1))[:, None]
    for it in range(1, max_iter + 1):
        A = np.hstack([_basis_matrix(n, X[ref]), signs])
        sol = np.linalg.solve(A, np.cos(n * X[ref]))
        c, E = sol[:d], sol[d]
        err = _error(n, c, X)
        star = int(np.argmax(np.abs(err)))
        emax = abs(err[star])
        if emax - abs(E) <= tol * max(emax, 1e-300):
            return c, abs(E), err, ref, it, True
        runs = _extrema_runs(err)
        if len(runs) >= d + 1 and star in runs:
            ref = np.array(_select_reference(runs, err, d + 1))
        else:
            ref = _single_exchange(ref, err, star)
    return c, abs(E), err, ref, max_iter, False


def _host(Q, t):
    return next((a, b) for a, b in Q if a <= t <= b)


def minimax_on_set(n, Q, grid_pts=4000, max_iter=100, polish=6, tol=1e-13):
    """Least ``max_{t in Q} |cos nt - f_{n-1}(t)|`` over trigonometric ``f_{n-1}``.

    ``Q`` is a list of ``(a, b)`` intervals within one period. The problem is
    solved on a uniform discretization of ``Q`` by a multiple-exchange
    iteration; the grid is then enriched with the polished local extrema of the
    error and the exchange rerun, ``polish`` times.
    """
    if n < 1:
        raise DomainError("n must be positive")
    Q, total = _intervals(Q)
    d = 2 * n - 1
    if grid_pts < 8 * (n + 1):
        raise DomainError(f"need at least {8 * (n + 1)} grid points")
    full = total >= TWO_PI - 1e-12
    pts = []
    for a, b in Q:
        k = max(int(round(grid_pts * (b - a) / total)), 2 * d + 2)
        pts.append(np.linspace(a, b, k, endpoint=not full))
    X = np.unique(np.concatenate(pts))
    ref = np.linspace(0, len(X) - 1, d + 1).round().astype(int)

    certified = False
    iters = 0
    for round_ in range(polish + 1):
        c, E, err, ref, it, ok = _exchange(n, X, ref, max_iter, tol)
        iters += it
        if round_ == polish:
            certified = ok
            break
        # polish each extremum within its neighbouring cells and add it to the grid
        new = []
        for i in _extrema_runs(err):
            lo = X[max(i - 1, 0)]
            hi = X[min(i + 1, len(X) - 1)]
            if not any(a <= lo and hi <= b for a, b in Q):
                lo, hi = max(lo, _host(Q, X[i])[0]), min(hi, _host(Q, X[i])[1])
            if hi <= lo:
                continue
            a, b = lo, hi
            for _ in range(60):
                m1 = b - 0.6180339887498949 * (b - a)
                m2 = a + 0.6180339887498949 * (b - a)
                if abs(_error(n, c, [m1])[0]) >= abs(_error(n, c, [m2])[0]):
                    b = m2
                else:
                    a = m1
            new.append(0.5 * (a + b))
        X_new = np.unique(np.concatenate([X, new]))
        ref_pts = X[ref]
        X = X_new
        ref = np.searchsorted(X, ref_pts)

    err = _error(n, c, X)
    emax = float(np.max(np.abs(err)))
    alt, act = _alternation(err, 1e-8)
    certified = certified and alt >= d + 1
    return MinimaxResult(
        value=float(E), coeffs=tuple(c), certified=bool(certified), alternation=alt,
        active=tuple(float(X[i]) for i in act), iterations=iters, max_error=emax,
    )


def babenko_scan(n, y_grid):
    """Rows ``(y, mu(y cos nt), sigma_n(y), ratio)`` over ``y_grid``."""
    from . import closedforms as cf

    rows = []
    for y in y_grid:
        y = float(y)
        if not y > 1.0:
            raise DomainError(f"scan values must exceed 1, got {y}")
        mu = cf.mu_leading(y)
        sig = cf.sigma(n, y)
        rows.append((y, mu, sig, mu / sig))
    return rows


def zero_distance(a, b):
    """Largest per-coordinate circular gap between two zero sets, minimized over rotation and relabelling."""
    a = np.sort(np.mod(np.asarray(a, dtype=float), TWO_PI))
    b = np.sort(np.mod(np.asarray(b, dtype=float), TWO_PI))
    if a.size != b.size:
        raise DomainError("zero sets differ in size")
    best = math.inf
    for s in range(a.size):
        d = np.angle(np.exp(1j * (a - np.roll(b, -s))))
        r = np.angle(np.mean(np.exp(1j * d)))
        best = min(best, float(np.max(np.abs(np.angle(np.exp(1j * (d - r)))))))
    return best
