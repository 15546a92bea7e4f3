"""Backend selection for the hot loops.

The compiled extension is used when it imports and ``CHEBMEAS_PURE`` is not
set to a true value; otherwise the numpy fallback is used. ``BACKEND`` names
the active one.
"""

import os

import numpy as np

from . import _fallback

if os.environ.get("CHEBMEAS_PURE", "").lower() in ("1", "true", "yes"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"


def _arr(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def eval_zeros(phis, scale, ts):
    ts = _arr(np.atleast_1d(ts))
    return _impl.eval_zeros(_arr(phis), float(scale), ts)


def eval_trig(a, b, ts):
    ts = _arr(np.atleast_1d(ts))
    return _impl.eval_trig(_arr(a), _arr(b), ts)


def level_measure(phis, h, n_grid=8192, tol=1e-12):
    return float(_impl.level_measure(_arr(phis), float(h), int(n_grid), float(tol)))


def sup_abs(phis, lo, hi, n_grid=8192):
    val, arg = _impl.sup_abs(_arr(phis), float(lo), float(hi), int(n_grid))
    return float(val), float(arg)


def use(backend):
    """Switch backend at runtime (``"compiled"`` or ``"python"``); for benchmarks and tests."""
    global _impl, BACKEND
    if backend == "python":
        _impl = _fallback
    elif backend == "compiled":
        from . import _kernels
        _impl = _kernels
    else:
        raise ValueError(f"unknown backend {backend!r}")
    BACKEND = backend
