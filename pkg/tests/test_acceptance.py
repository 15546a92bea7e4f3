"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np
import pytest

from chebmeas import closedforms as cf
from chebmeas import geometry as G
from chebmeas import kernels, oracle
from chebmeas.levelset import level_set, mu
from chebmeas.trigpoly import TWO_PI, CirclePoly, ComplexZeroForm, circle_eval, cheb_T, dirichlet_D, realify

PI = math.pi


LINES = {}


def report(num, ok, detail):
    # collected lines are printed in the terminal summary (see conftest.py)
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES[num] = line
    print(line)
    return ok


def test_criterion_01_extremal_measure():
    t0 = time.perf_counter()
    worst = 0.0
    for n in (1, 2, 3, 4):
        for y in (1.5, 2.0, 4.0, 10.0):
            for k in range(2 * n):
                worst = max(worst, abs(mu(cf.extremal_fnk(n, y, k)) - cf.sigma(n, y)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-6 and dt < 10
    assert report(1, ok, f"max |mu - sigma| = {worst:.2e}, {dt:.2f}s"), (worst, dt)


def test_criterion_02_oracle_rediscovery():
    t0 = time.perf_counter()
    worst_v, worst_z = 0.0, 0.0
    for m in (1, 2, 3, 4):
        for h in (0.5, 1.0, 1.5):
            r = oracle.minimize_measure(m, h)
            worst_v = max(worst_v, abs(r.value - cf.delta(m, h)))
            if m % 2 == 0:
                alpha = cf.relate_params(m, h=h).alpha
                worst_z = max(worst_z, oracle.zero_distance(r.phis, cf.arc_extremal(m, alpha).phis))
    dt = time.perf_counter() - t0
    ok = worst_v <= 1e-2 and worst_z <= 1e-2 and dt < 180
    assert report(2, ok, f"max |value - delta| = {worst_v:.2e}, max zero gap = {worst_z:.2e}, "
                         f"{dt:.1f}s"), (worst_v, worst_z, dt)


def test_criterion_03_structure():
    bad = []
    for m in range(1, 7):
        for alpha in (PI / 6, PI / 3, PI / 2, 2 * PI / 3):
            ls = level_set(cf.extremal_g(m, alpha), cf.arc_threshold(m, alpha))
            if (ls.segment_count, ls.touch_count) != (1, m - 1):
                bad.append(("g", m, alpha, ls.segment_count, ls.touch_count))
    for n in (1, 2, 3, 4):
        for y in (1.5, 2.0, 4.0, 10.0):
            ls = level_set(cf.extremal_fnk(n, y, 0), 1.0)
            if (ls.segment_count, ls.touch_count) != (1, 2 * n - 1):
                bad.append(("f", n, y, ls.segment_count, ls.touch_count))
    assert report(3, not bad, f"{len(bad)} count mismatches"), bad


def test_criterion_04_arc_extremal():
    worst, outside_ok = 0.0, True
    for m in range(1, 9):
        for alpha in (PI / 6, PI / 3, PI / 2, 2 * PI / 3):
            P = cf.arc_extremal(m, alpha)
            eps = cf.eps_arc(m, 2 * alpha)
            sup, _ = kernels.sup_abs(P.phis, -alpha, alpha, 16384)
            worst = max(worst, abs(sup - eps))
            t = np.linspace(alpha, TWO_PI - alpha, 514)[1:-1]
            outside_ok &= bool(np.all(np.abs(circle_eval(P, t)) > eps))
    ok = worst <= 1e-9 and outside_ok
    assert report(4, ok, f"max |sup - eps_arc| = {worst:.2e}, strict outside: {outside_ok}"), worst


def test_criterion_05_representation_identities():
    t = np.linspace(0, TWO_PI, 2048, endpoint=False)
    even_err, odd_err, odd_ratio = 0.0, 0.0, []
    for n in range(0, 6):
        for alpha in (PI / 6, PI / 3, PI / 2, 2 * PI / 3):
            lam = math.sin(alpha / 2) ** -2
            x = lam * np.cos(t) - (lam - 1)
            if n >= 1:
                ref = np.abs(circle_eval(cf.arc_extremal(2 * n, alpha), t))
                even_err = max(even_err, np.max(np.abs(np.abs(lam ** -n * 2 * cheb_T(n, x)) - ref)))
            ref = np.abs(circle_eval(cf.arc_extremal(2 * n + 1, alpha), t))
            literal = np.abs(2 * np.sin(t / 2) * dirichlet_D(n, x))
            odd_err = max(odd_err, np.max(np.abs(literal - ref)))
            mask = ref > 1e-3
            odd_ratio.append(float(np.median(literal[mask] / ref[mask])) / lam ** n)
    lib_err = max(np.max(np.abs(cf.extremal_g_composition(m, a)(t) - cf.extremal_g(m, a)(t)))
                  for m in range(1, 12) for a in (PI / 6, PI / 3, PI / 2, 2 * PI / 3))
    ok = even_err <= 1e-10 and odd_err <= 1e-10
    detail = (f"even max err = {even_err:.2e}, odd (as stated) max err = {odd_err:.2e}; "
              f"odd ratio / lam^n in [{min(odd_ratio):.12f}, {max(odd_ratio):.12f}]; "
              f"with lam^-n factor max err = {lib_err:.2e}")
    assert report(5, ok, detail), detail


def test_criterion_06_averaging_functional():
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 17))
        P = CirclePoly(tuple(rng.uniform(0, TWO_PI, m)))
        worst = max(worst, abs(abs(oracle.sum_functional(P)) - 2.0))
    sups = [oracle.minimize_supnorm(m).value for m in (1, 2, 3)]
    ok = worst <= 1e-10 and all(abs(s - 2.0) <= 1e-3 for s in sups)
    assert report(6, ok, f"max ||sum| - 2| = {worst:.2e}, supnorms = "
                         f"{', '.join(f'{s:.6f}' for s in sups)}"), (worst, sups)


def test_criterion_07_minimax_on_segments():
    worst, cert_ok, two_ok = 0.0, True, True
    for n in (1, 2, 3):
        for alpha in (PI / 3, PI / 2):
            u = cf.u_compact(n, 2 * alpha)
            r = oracle.minimax_on_set(n, [(-alpha, alpha)])
            worst = max(worst, abs(r.value - u))
            cert_ok &= r.certified and r.alternation >= 2 * n + 1
            # two intervals of the same total measure 2*alpha
            r2 = oracle.minimax_on_set(n, [(-alpha, -alpha / 3), (1.0, 1.0 + 4 * alpha / 3)])
            two_ok &= r2.value >= u - 1e-3
    ok = worst <= 1e-6 and cert_ok and two_ok
    assert report(7, ok, f"max |value - u| = {worst:.2e}, certified: {cert_ok}, "
                         f"two-interval bound: {two_ok}"), (worst, cert_ok, two_ok)


def test_criterion_08_babenko():
    below, worst = True, 0.0
    ys = np.concatenate([1 + np.geomspace(1e-10, 1, 200), np.geomspace(2, 1e8, 200)])
    for n in (1, 2, 3, 4):
        beta = cf.babenko_beta(n)
        below &= all(r[3] < beta for r in oracle.babenko_scan(n, ys))
        (row,) = oracle.babenko_scan(n, [1 + 1e-8])
        worst = max(worst, abs(row[3] - beta))
    ok = below and worst <= 1e-3
    assert report(8, ok, f"ratio < sqrt(2n): {below}, max |ratio(1+1e-8) - sqrt(2n)| = "
                         f"{worst:.2e}"), (below, worst)


def test_criterion_09_geometry():
    conv = sum(len(G.convexity_campaign(m, 2000, seed=m)["violations"]) for m in range(1, 6))
    cubes = sum(len(G.cubes_campaign(m, 10_000, seed=m)["violations"]) for m in range(2, 7))
    dec = G.decomposition_campaign(4, 1.0, 1000, seed=9)
    eq = [G.equivalence_check(m, 1.0, 100, seed=m) for m in (2, 3, 4)]
    eq_bad = sum(len(r["violations"]) for r in eq)
    eq_err = max(r["max_error"] for r in eq)
    ok = conv == 0 and cubes == 0 and not dec["violations"] and dec["max_error"] <= 1e-9 and eq_bad == 0
    assert report(9, ok, f"convexity violations {conv}/10000, cube violations {cubes}/50000, "
                         f"decomposition max err {dec['max_error']:.1e}, "
                         f"mes1 max err {eq_err:.1e}"), (conv, cubes, dec["max_error"], eq_bad)


def _random_complex_form(rng):
    n = int(rng.integers(1, 5))
    l = int(rng.integers(0, n + 1))
    pairs = [(rng.uniform(0.05, 0.95), rng.uniform(0, TWO_PI)) for _ in range(l)]
    real = list(rng.uniform(0, TWO_PI, 2 * (n - l)))
    s = 2 * sum(p for _, p in pairs) + sum(real)
    if real:
        real[-1] -= s
    else:
        pairs[-1] = (pairs[-1][0], pairs[-1][1] - s / 2)
    return ComplexZeroForm(rng.uniform(1.0, 6.0), tuple(pairs), tuple(real))


def test_criterion_10_realification():
    rng = np.random.default_rng(7)
    t = np.linspace(0, TWO_PI, 4096, endpoint=False)
    dom_bad = meas_bad = strict_bad = strict_checked = 0
    for _ in range(1000):
        f = _random_complex_form(rng)
        g = realify(f)
        if np.any(np.abs(g(t)) > np.abs(f(t)) + 1e-12):
            dom_bad += 1
        mf, mg = mu(f), mu(g)
        if mg > mf + 1e-9:
            meas_bad += 1
        if f.l >= 1 and mf > 1e-6 and mg < TWO_PI - 1e-6:
            strict_checked += 1
            if not mg < mf:
                strict_bad += 1
    ok = dom_bad == meas_bad == strict_bad == 0
    assert report(10, ok, f"dominance failures {dom_bad}, measure increases {meas_bad}, "
                          f"non-strict {strict_bad}/{strict_checked}"), (dom_bad, meas_bad, strict_bad)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
