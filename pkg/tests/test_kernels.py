import importlib.util

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebmeas import _fallback, kernels

HAVE_EXT = importlib.util.find_spec("chebmeas._kernels") is not None
needs_ext = pytest.mark.skipif(not HAVE_EXT, reason="compiled extension not built")

phis_st = st.lists(st.floats(-7, 7), min_size=1, max_size=8)


def _both():
    from chebmeas import _kernels
    return _kernels, _fallback


def _arr(x):
    return np.ascontiguousarray(x, dtype=float)


@needs_ext
@settings(max_examples=60)
@given(phis_st, st.floats(-3, 3).filter(lambda s: s != 0))
def test_eval_zeros_agree(phis, scale):
    ext, py = _both()
    t = np.linspace(-1, 7, 301)
    np.testing.assert_allclose(ext.eval_zeros(_arr(phis), scale, t), py.eval_zeros(_arr(phis), scale, t),
                               rtol=1e-13, atol=1e-13 * 2 ** len(phis))


@needs_ext
@settings(max_examples=60)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=10), st.integers(0, 1000))
def test_eval_trig_agree(a, seed):
    ext, py = _both()
    b = np.random.default_rng(seed).normal(size=len(a))
    b[0] = 0.0
    t = np.linspace(0, 6.3, 257)
    np.testing.assert_allclose(ext.eval_trig(_arr(a), _arr(b), t), py.eval_trig(_arr(a), _arr(b), t),
                               atol=1e-12 * (1 + np.abs(a).sum() + np.abs(b).sum()))


@needs_ext
@settings(max_examples=60, deadline=None)
@given(phis_st, st.floats(0.05, 3.0))
def test_level_measure_agree(phis, h):
    ext, py = _both()
    assert ext.level_measure(_arr(phis), h, 2048, 1e-12) == pytest.approx(
        py.level_measure(_arr(phis), h, 2048, 1e-12), abs=1e-9)


@needs_ext
@settings(max_examples=60, deadline=None)
@given(phis_st, st.floats(0, 3), st.floats(0.01, 3))
def test_sup_abs_agree(phis, lo, width):
    ext, py = _both()
    v1, _ = ext.sup_abs(_arr(phis), lo, lo + width, 1024)
    v2, _ = py.sup_abs(_arr(phis), lo, lo + width, 1024)
    assert v1 == pytest.approx(v2, rel=1e-12, abs=1e-14)


def test_backend_switch():
    before = kernels.BACKEND
    try:
        kernels.use("python")
        assert kernels.BACKEND == "python"
        assert kernels.level_measure([0.0], 1.0) == pytest.approx(4 * np.pi / 3, abs=1e-9)
        with pytest.raises(ValueError):
            kernels.use("fortran")
    finally:
        kernels.use(before)


def test_sup_abs_endpoint_and_interior():
    v, arg = kernels.sup_abs([0.0], 0.0, np.pi / 2)
    assert v == pytest.approx(np.sqrt(2)) and arg == pytest.approx(np.pi / 2)
    v, arg = kernels.sup_abs([0.0], 0.0, 2 * np.pi)
    assert v == pytest.approx(2.0, abs=1e-14) and arg == pytest.approx(np.pi, abs=1e-6)
