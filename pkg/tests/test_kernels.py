"""Backend parity: the compiled kernel and the NumPy fallback must agree."""

import importlib.util

import numpy as np
import pytest

from mfkit import _varcore_py
from mfkit.engine import _poly_basis

HAVE_COMPILED = importlib.util.find_spec("mfkit._varcore") is not None


def _both_backends():
    backends = [("numpy", _varcore_py.segment_variances)]
    if HAVE_COMPILED:
        from mfkit import _varcore

        backends.append(("compiled", _varcore.segment_variances))
    return backends


@pytest.mark.parametrize("bidirectional", [True, False])
@pytest.mark.parametrize("scale,order", [(10, 0), (16, 1), (25, 2), (100, 3)])
def test_backends_agree(scale, order, bidirectional):
    if not HAVE_COMPILED:
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(scale * 7 + order)
    prof = np.cumsum(rng.standard_normal(1013))
    basis = _poly_basis(scale, order)
    results = [fn(prof, scale, basis, bidirectional) for _, fn in _both_backends()]
    assert results[0].shape == results[1].shape
    assert np.allclose(results[0], results[1], rtol=1e-10, atol=1e-14)


def test_segment_order_and_count():
    # forward block first, then the trailing-aligned block
    prof = np.arange(23, dtype=float)
    basis = _poly_basis(5, 0)
    for _, fn in _both_backends():
        v = fn(prof, 5, basis, True)
        assert v.shape == (8,)
        # order-0 detrend of a linear ramp: variance of centered 0..4 everywhere
        assert np.allclose(v, np.var(np.arange(5.0)), rtol=1e-12)
        v1 = fn(prof, 5, basis, False)
        assert v1.shape == (4,)
        assert np.allclose(v1, v[:4], rtol=0, atol=0)


def test_trailing_block_covers_tail():
    # N not divisible by n: the trailing block must include the last sample
    rng = np.random.default_rng(3)
    prof = np.cumsum(rng.standard_normal(103))
    basis = _poly_basis(10, 1)
    for _, fn in _both_backends():
        v = fn(prof, 10, basis, True)
        # manually detrend the final segment
        seg = prof[93:]
        resid = seg - basis @ (basis.T @ seg)
        assert v[-1] == pytest.approx(np.mean(resid**2), rel=1e-10)


def test_forced_backend_env(monkeypatch):
    # selector honors MFKIT_KERNEL=numpy
    import subprocess
    import sys

    out = subprocess.run(
        [sys.executable, "-c", "from mfkit.kernels import KERNEL_BACKEND; print(KERNEL_BACKEND)"],
        env={"MFKIT_KERNEL": "numpy", "PATH": "/usr/bin:/bin"},
        capture_output=True,
        text=True,
    )
    assert out.stdout.strip() == "numpy"
