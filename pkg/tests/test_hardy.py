import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plurikernel import hardy


def dft_direct(samples, modes):
    """Brute-force DFT oracle: c_j = (1/M) sum_k f(theta_k) e^{-i j theta_k}."""
    m = samples.shape[-1]
    theta = 2 * np.pi * np.arange(m) / m
    return np.array(
        [np.sum(samples * np.exp(-1j * j * theta)) / m for j in range(-modes, modes + 1)]
    )


def test_analyze_single_mode():
    theta = hardy.grid_angles(40)
    coeffs = hardy.analyze(np.exp(1j * theta), 8)
    assert abs(coeffs[8 + 1] - 1.0) < 1e-14
    coeffs[8 + 1] = 0
    assert np.abs(coeffs).max() < 1e-14


def test_analyze_constant():
    coeffs = hardy.analyze(np.full(40, 3.0 + 0j), 8)
    assert abs(coeffs[8] - 3.0) < 1e-14


def test_analyze_linearity():
    theta = hardy.grid_angles(40)
    coeffs = hardy.analyze(np.exp(2j * theta) + np.exp(-1j * theta), 8)
    assert abs(coeffs[8 + 2] - 1.0) < 1e-14
    assert abs(coeffs[8 - 1] - 1.0) < 1e-14


def test_analyze_matches_direct_dft(rng):
    samples = rng.normal(size=34) + 1j * rng.normal(size=34)
    assert np.abs(hardy.analyze(samples, 8) - dft_direct(samples, 8)).max() < 1e-13


def test_round_trip_on_polynomials(rng):
    n_modes = 16
    coeffs = rng.normal(size=(3, 2 * n_modes + 1)) + 1j * rng.normal(size=(3, 2 * n_modes + 1))
    vals = hardy.synthesize(coeffs, 4 * n_modes + 4)
    back = hardy.analyze(vals, n_modes)
    assert np.abs(back - coeffs).max() < 1e-13


def test_grid_size_guard():
    with pytest.raises(ValueError):
        hardy.analyze(np.zeros(30), 8)  # needs >= 34
    with pytest.raises(ValueError):
        hardy.analyze(np.zeros(35), 8)  # odd


def test_holomorphic_split_examples():
    theta = hardy.grid_angles(40)
    loop = hardy.BoundaryLoop.from_samples(np.exp(1j * theta), 8)
    disc, res = hardy.holomorphic_split(loop)
    assert res < 1e-14
    assert abs(disc.coeffs[0, 1] - 1.0) < 1e-14

    loop = hardy.BoundaryLoop.from_samples(np.exp(-1j * theta), 8)
    disc, res = hardy.holomorphic_split(loop)
    assert abs(res - 1.0) < 1e-13
    assert np.abs(disc.coeffs).max() < 1e-13

    loop = hardy.BoundaryLoop.from_samples(2 + np.exp(1j * theta) + 0.5 * np.exp(-2j * theta), 8)
    disc, res = hardy.holomorphic_split(loop)
    assert abs(res - 0.5) < 1e-13
    assert abs(disc.coeffs[0, 0] - 2.0) < 1e-13
    assert abs(disc.coeffs[0, 1] - 1.0) < 1e-13


def test_split_residual_iff_negative_content():
    # batch version of the 1000-random-loops property
    rng = np.random.default_rng(0)
    n_modes = 8
    for k in range(1000):
        coeffs = rng.normal(size=(1, 2 * n_modes + 1)) + 1j * rng.normal(size=(1, 2 * n_modes + 1))
        if k % 2 == 0:
            coeffs[:, :n_modes] = 0.0
        loop = hardy.BoundaryLoop(coeffs, 4 * n_modes + 4)
        _, res = hardy.holomorphic_split(loop)
        neg = np.linalg.norm(coeffs[:, :n_modes])
        assert (res < 1e-13) == (neg < 1e-13)
        assert abs(res - neg) < 1e-13


def test_conjugate_modewise():
    theta = hardy.grid_angles(64)
    u = hardy.RealTrigPoly(np.array([0.0, 1.0]), np.array([0.0]))  # cos
    v = hardy.conjugate(u)
    assert np.abs(v.values(64) - np.sin(theta)).max() < 1e-14
    u = hardy.RealTrigPoly(np.array([1.0]), np.zeros(0))  # constant
    assert np.abs(hardy.conjugate(u).values(64)).max() == 0.0
    u = hardy.RealTrigPoly(np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0]))  # cos 2t
    v = hardy.conjugate(u)
    assert np.abs(v.values(64) - np.sin(2 * theta)).max() < 1e-14
    # sin j t -> -cos j t + 1 so that the value at theta = 0 vanishes
    u = hardy.RealTrigPoly(np.array([0.0, 0.0, 0.0]), np.array([0.0, 1.0]))
    v = hardy.conjugate(u)
    assert np.abs(v.values(64) - (1.0 - np.cos(2 * theta))).max() < 1e-14
    assert abs(v.eval(np.array([0.0]))[0]) < 1e-14


@given(st.integers(1, 6), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_conjugate_value_at_one_vanishes(j, shift):
    n = 8
    a = np.zeros(n + 1)
    b = np.zeros(n)
    a[j] = 1.5
    b[min(j + shift, n) - 1] = -0.7
    v = hardy.conjugate(hardy.RealTrigPoly(a, b))
    assert abs(v.eval(np.array([0.0]))[0]) < 1e-12


def test_eval_power_rule():
    disc = hardy.AnalyticDisc(np.array([[0.0, 0.0, 1.0]], dtype=complex))  # zeta^2
    assert abs(disc.eval(1.0, 1)[0] - 2.0) < 1e-15
    const = hardy.AnalyticDisc(np.array([[2.5 - 1j]], dtype=complex))
    assert abs(const.eval(0.3 + 0.2j)[0] - (2.5 - 1j)) < 1e-15
    ident = hardy.AnalyticDisc(np.array([[0.0, 1.0]], dtype=complex))
    assert abs(ident.eval(0.3 + 0.2j)[0] - (0.3 + 0.2j)) < 1e-15


def test_eval_derivatives_match_polynomial_oracle(rng):
    coeffs = rng.normal(size=(2, 9)) + 1j * rng.normal(size=(2, 9))
    disc = hardy.AnalyticDisc(coeffs)
    zeta = 0.4 - 0.33j
    for order in range(4):
        want = [
            np.polynomial.polynomial.Polynomial(coeffs[j]).deriv(order)(zeta)
            for j in range(2)
        ]
        got = disc.eval(zeta, order)
        assert np.abs(got - np.array(want)).max() < 1e-12


def test_eval_outside_disc_rejected():
    disc = hardy.AnalyticDisc(np.array([[0.0, 1.0]], dtype=complex))
    with pytest.raises(ValueError):
        disc.eval(1.2)


def test_eval_reproduces_grid_samples(rng):
    n_modes = 10
    coeffs = rng.normal(size=(2, n_modes + 1)) + 1j * rng.normal(size=(2, n_modes + 1))
    disc = hardy.AnalyticDisc(coeffs)
    m = 4 * n_modes + 4
    vals = disc.boundary_values(m)
    pts = hardy.grid_points(m)
    direct = disc.eval(pts)
    assert np.abs(vals - direct).max() < 1e-12
