import numpy as np
import pytest

from plurikernel import domains as dom
from plurikernel import geodesic as geo
from plurikernel import kernels as kn
from plurikernel import leftinv as li
from plurikernel.errors import EvaluationError


@pytest.fixture(scope="module")
def linear_disc(ball2, cfg32):
    return geo.ball_geodesic(ball2, z=[0.0, 0.0], w=[0.5, 0.0], cfg=cfg32)


@pytest.fixture(scope="module")
def ell_disc(ellipsoid_1_4, cfg32):
    return geo.solve_two_point(ellipsoid_1_4, [0.05 + 0.1j, -0.1], [0.3, 0.05 - 0.02j], cfg32)


def test_left_inverse_linear_disc(linear_disc):
    assert abs(li.left_inverse(linear_disc, np.array([0.3, 0.2j])) - 0.3) < 1e-12
    assert abs(li.left_inverse(linear_disc, np.array([0.0, 0.9])) - 0.0) < 1e-12
    proj = li.lempert_projection(linear_disc, np.array([0.3, 0.2j]))
    assert np.abs(proj - np.array([0.3, 0.0])).max() < 1e-12


def test_left_inverse_identity(ell_disc, rng):
    for _ in range(50):
        zeta = complex(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))
        root = li.left_inverse(ell_disc, ell_disc.phi.eval(zeta))
        assert abs(root - zeta) < 1e-10


def test_left_inverse_on_boundary_input(ell_disc):
    # boundary values of the geodesic map to the unit circle
    z = ell_disc.phi.eval(np.exp(0.7j))
    root = li.left_inverse(ell_disc, z)
    assert abs(root - np.exp(0.7j)) < 1e-8
    assert abs(root) <= 1.0


def test_projection_idempotent(ell_disc, rng):
    pts = dom.interior_samples(ell_disc.spec, 30, rng)
    for z in pts:
        rho_z = li.lempert_projection(ell_disc, z)
        assert np.abs(li.lempert_projection(ell_disc, rho_z) - rho_z).max() < 1e-10


def test_gradient_formula_examples(linear_disc):
    grad = li.left_inverse_gradient(linear_disc, np.array([0.3, 0.2j]))
    assert np.abs(grad - np.array([1.0, 0.0])).max() < 1e-12


def test_gradient_matches_fd(ell_disc, rng):
    for _ in range(10):
        z = dom.interior_samples(ell_disc.spec, 1, rng)[0]
        grad = li.left_inverse_gradient(ell_disc, z)
        fd = np.zeros(2, dtype=complex)
        for j in range(2):
            e = np.zeros(2)
            e[j] = 1e-5
            fd[j] = (li.left_inverse(ell_disc, z + e) - li.left_inverse(ell_disc, z - e)) / 2e-5
        assert np.abs(grad - fd).max() <= 1e-6 * max(1.0, np.abs(grad).max())


def test_gradient_at_boundary_anchor(ell_disc):
    # at p = phi(1) the gradient equals phi_tilde(1)
    p = ell_disc.phi.eval(1.0)
    grad = li.left_inverse_gradient(ell_disc, p)
    assert np.abs(grad - ell_disc.phi_tilde.eval(1.0)).max() < 1e-8


def test_boundary_derivative(linear_disc, ell_disc):
    p = np.array([1.0, 0.0], dtype=complex)
    w = np.array([0.3 + 0.1j, -0.7j])
    assert abs(li.boundary_derivative(linear_disc, p, w) - (0.3 + 0.1j)) < 1e-12
    # consistency: w = phi'(1) maps to 1
    p_e = ell_disc.phi.eval(1.0)
    val = li.boundary_derivative(ell_disc, p_e, ell_disc.phi.eval(1.0, 1))
    assert abs(val - 1.0) < 1e-9
    # tangential w maps to 0
    nu = dom.normal(ell_disc.spec, p_e).nu
    w_t = np.array([np.conj(nu[1]), -np.conj(nu[0])])
    from plurikernel.closedball import herm

    assert abs(herm(w_t, nu)) < 1e-12
    assert abs(li.boundary_derivative(ell_disc, p_e, w_t)) < 1e-12


def test_boundary_derivative_is_gradient_limit(ell_disc, rng):
    p = ell_disc.phi.eval(1.0)
    w = rng.normal(size=2) + 1j * rng.normal(size=2)
    target = li.boundary_derivative(ell_disc, p, w)
    z_near = ell_disc.phi.eval(1.0 - 1e-4)
    grad = li.left_inverse_gradient(ell_disc, z_near)
    approx = np.dot(grad, w)
    assert abs(approx - target) / abs(target) < 1e-3


def test_winding_fallback_agrees(ell_disc, rng):
    for _ in range(5):
        z = dom.interior_samples(ell_disc.spec, 1, rng)[0]
        newton_root = li.left_inverse(ell_disc, z)
        integral_root = li._winding_locator(ell_disc, z)
        assert abs(newton_root - integral_root) < 1e-6


def test_exterior_point_rejected(linear_disc):
    with pytest.raises(EvaluationError):
        li.left_inverse(linear_disc, np.array([1.5, 0.0]))


def test_example_retraction():
    rho = li.example_retraction(0.1, {(1, 1): lambda z: 1.0}, 2)
    z0 = np.array([0.0, 0.5])
    assert np.abs(rho(z0) - np.array([0.025, 0.0])).max() < 1e-15
    rng = np.random.default_rng(0)
    for _ in range(100):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z *= 0.9 / max(1.0, np.linalg.norm(z))
        assert np.abs(rho(rho(z)) - rho(z)).max() < 1e-12
    with pytest.raises(EvaluationError):
        li.example_retraction(0.3, {}, 2)
    # eps = 0 is the linear projection itself
    rho0 = li.example_retraction(0.0, {(1, 1): lambda z: 1.0}, 2)
    z = np.array([0.3 + 0.1j, 0.4])
    assert np.abs(rho0(z) - np.array([0.3 + 0.1j, 0.0])).max() < 1e-15


def test_horosphere_monotone_under_projection(ball2, cfg32, rng):
    # kernel values do not increase under the projection onto a geodesic
    # through the singular boundary point
    p = np.array([1.0, 0.0], dtype=complex)
    v = np.array([0.8, 0.6]) / 1.0
    g = geo.ball_geodesic(ball2, p=p, v=v, cfg=cfg32)
    for _ in range(100):
        z = dom.interior_samples(ball2, 1, rng)[0]
        rho_z = li.lempert_projection(g, z)
        assert kn.poisson(ball2, p, rho_z) <= kn.poisson(ball2, p, z) + 1e-8
