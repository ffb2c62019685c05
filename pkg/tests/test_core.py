"""Parity of the compiled core against the pure-numpy fallback."""

import numpy as np
import pytest

from plurikernel import _core, _core_py


def _random_bump(rng, n, terms):
    coefs = rng.normal(size=terms)
    pows = rng.integers(0, 4, size=(terms, 2 * n)).astype(np.int64)
    return coefs, pows


@pytest.mark.parametrize("n", [1, 2, 3])
def test_eval_r_grad_parity(rng, n):
    z = rng.normal(size=(200, n)) + 1j * rng.normal(size=(200, n))
    a = rng.uniform(0.5, 4.0, size=n)
    coefs, pows = _random_bump(rng, n, 5)
    for eps in (0.0, 0.07):
        r1, g1 = _core.eval_r_grad(z, a, eps, coefs, pows)
        r2, g2 = _core_py.eval_r_grad(z, a, eps, coefs, pows)
        assert np.abs(r1 - r2).max() < 1e-12
        assert np.abs(g1 - g2).max() < 1e-12


def test_eval_r_grad_values():
    z = np.array([[1.0 + 0j, 0.0]])
    a = np.array([1.0, 1.0])
    r, g = _core.eval_r_grad(z, a, 0.0, np.zeros(0), np.zeros((0, 4), dtype=np.int64))
    assert abs(r[0]) < 1e-15
    assert np.abs(g[0] - np.array([1.0, 0.0])).max() < 1e-15


def test_eval_disc_batch_parity(rng):
    coeffs = rng.normal(size=(3, 17)) + 1j * rng.normal(size=(3, 17))
    zs = (rng.normal(size=50) + 1j * rng.normal(size=50)) * 0.3
    v1 = _core.eval_disc_batch(coeffs, zs)
    v2 = _core_py.eval_disc_batch(coeffs, zs)
    assert np.abs(v1 - v2).max() < 1e-12
    # against the polynomial oracle
    want = np.stack(
        [np.polynomial.polynomial.polyval(zs, coeffs[j]) for j in range(3)], axis=1
    )
    assert np.abs(v1 - want).max() < 1e-12


def test_backend_reports_name():
    assert _core.BACKEND in ("cython", "python")
    assert _core_py.BACKEND == "python"
