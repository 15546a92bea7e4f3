"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 20]
"""

import argparse
import timeit

import numpy as np

from chebmeas import kernels

CASES = [
    ("eval_zeros m=8, 8192 pts", lambda: kernels.eval_zeros(PHIS, 1.0, T)),
    ("eval_trig n=8, 8192 pts", lambda: kernels.eval_trig(A, B, T)),
    ("level_measure m=4, N=2048", lambda: kernels.level_measure(PHIS[:4], 1.0, 2048)),
    ("level_measure m=8, N=8192", lambda: kernels.level_measure(PHIS, 1.0, 8192)),
    ("sup_abs m=8, N=8192", lambda: kernels.sup_abs(PHIS, 0.0, 2 * np.pi, 8192)),
]

rng = np.random.default_rng(0)
PHIS = np.sort(rng.uniform(0, 2 * np.pi, 8))
T = np.linspace(0, 2 * np.pi, 8192)
A = rng.normal(size=9)
B = np.concatenate([[0.0], rng.normal(size=8)])


def bench(repeat):
    rows = {}
    for backend in ("compiled", "python"):
        try:
            kernels.use(backend)
        except ImportError:
            print(f"{backend} backend unavailable, skipped")
            continue
        for name, fn in CASES:
            fn()
            best = min(timeit.repeat(fn, number=5, repeat=repeat)) / 5
            rows.setdefault(name, {})[backend] = best
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=20)
    args = p.parse_args()
    rows = bench(args.repeat)
    print(f"{'kernel':32s} {'compiled':>12s} {'python':>12s} {'speedup':>8s}")
    for name, r in rows.items():
        c, py = r.get("compiled"), r.get("python")
        fmt = lambda v: f"{v * 1e6:10.1f}us" if v is not None else f"{'-':>12s}"
        sp = f"{py / c:7.1f}x" if c and py else f"{'-':>8s}"
        print(f"{name:32s} {fmt(c)} {fmt(py)} {sp}")


if __name__ == "__main__":
    main()
