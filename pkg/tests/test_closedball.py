import numpy as np
import pytest

from plurikernel import closedball as bl
from plurikernel.errors import DomainError


def random_interior(rng, n, cap=0.7):
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    return z * rng.uniform(0.1, cap) / np.linalg.norm(z)


def boundary_attachment(geo):
    theta = np.linspace(0, 2 * np.pi, 257)
    vals = geo.point(np.exp(1j * theta))
    return np.abs(np.sum(np.abs(vals) ** 2, axis=0) - geo.radius**2).max()


def dual_boundary_identity(geo):
    """phi_tilde = e^{i th} mu dr(phi) with dr = conj(z)/R^2 on the sphere."""
    theta = np.linspace(0, 2 * np.pi, 129)
    eith = np.exp(1j * theta)
    phi = geo.point(eith)
    cos_c, sin_c = geo.mu_trig()
    mu = cos_c[0] + cos_c[1] * np.cos(theta) + sin_c[0] * np.sin(theta)
    tilde = np.polynomial.polynomial.polyval(eith, geo.phi_tilde_coeffs(4).T.T)
    tilde = np.array([
        np.polynomial.polynomial.polyval(eith, geo.phi_tilde_coeffs(4)[j])
        for j in range(geo.n)
    ])
    target = eith * mu * np.conj(phi) / geo.radius**2
    return np.abs(tilde - target).max()


def norm_one_identity(geo):
    zeta = 0.83 * np.exp(2j * np.pi * np.arange(16) / 16)
    tilde = np.array([
        np.polynomial.polynomial.polyval(zeta, geo.phi_tilde_coeffs(4)[j])
        for j in range(geo.n)
    ])
    vel = geo.velocity(zeta)
    return np.abs(np.sum(tilde * vel, axis=0) - 1.0).max()


@pytest.mark.parametrize("radius", [1.0, 2.0])
def test_two_point_geodesic(rng, radius):
    for _ in range(10):
        z = random_interior(rng, 2) * radius
        w = random_interior(rng, 2) * radius
        geo = bl.two_point_geodesic(z, w, radius)
        t = geo.meta["t"]
        assert 0 < t < 1
        assert np.abs(geo.point(np.array([0.0]))[:, 0] - z).max() < 1e-13
        assert np.abs(geo.point(np.array([t + 0j]))[:, 0] - w).max() < 1e-13
        assert boundary_attachment(geo) < 1e-12
        assert dual_boundary_identity(geo) < 1e-12
        assert norm_one_identity(geo) < 1e-12


def test_direction_geodesic(rng):
    for _ in range(10):
        z = random_interior(rng, 2)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        geo = bl.direction_geodesic(z, v)
        t = geo.meta["t"]
        assert t > 0
        vel0 = geo.velocity(np.array([0.0]))[:, 0]
        assert np.abs(vel0 - t * v).max() < 1e-12
        assert boundary_attachment(geo) < 1e-12
        assert norm_one_identity(geo) < 1e-12
        # t = 1/kappa against the closed-form metric
        assert abs(1.0 / t - bl.kobayashi_metric_ball(z, v)) < 1e-12


def test_metric_closed_form_at_origin():
    v = np.array([2.0, 0.0])
    assert abs(bl.kobayashi_metric_ball(np.zeros(2), v) - 2.0) < 1e-15


def test_chl_geodesic_paper_form(rng):
    # eta(zeta) = e1 + (zeta - 1) v1 v for nu = e1
    p = np.array([1.0, 0.0], dtype=complex)
    v = np.array([1.0, 1.0]) / np.sqrt(2)
    geo = bl.chl_geodesic(p, v)
    v1 = 1 / np.sqrt(2)
    for zeta in (0.0, 0.3 + 0.2j, -0.8):
        want = p + (zeta - 1.0) * v1 * v
        assert np.abs(geo.point(np.array([zeta]))[:, 0] - want).max() < 1e-14
    assert boundary_attachment(geo) < 1e-13
    assert norm_one_identity(geo) < 1e-13


@pytest.mark.parametrize("radius", [1.0, 1.7])
def test_chl_conditions_random(rng, radius):
    for _ in range(8):
        p = rng.normal(size=2) + 1j * rng.normal(size=2)
        p *= radius / np.linalg.norm(p)
        nu = p / radius
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        tang = u - bl.herm(u, nu) * nu
        v = nu + 0.6 * tang / max(np.linalg.norm(tang), 1e-12)
        v /= np.linalg.norm(v)
        v *= np.exp(-1j * np.angle(bl.herm(v, nu)))
        geo = bl.chl_geodesic(p, v, radius)
        v1 = np.real(bl.herm(v, nu))
        assert np.abs(geo.point(np.array([1.0]))[:, 0] - p).max() < 1e-12
        assert np.abs(geo.velocity(np.array([1.0]))[:, 0] - v1 * v).max() < 1e-12
        # Im <phi''(1), nu> = 0 (second derivative of the rational form)
        h = 1e-6
        dd = (geo.velocity(np.array([1.0]))[:, 0]
              - geo.velocity(np.array([1.0 - h]))[:, 0]) / h
        assert abs(np.imag(bl.herm(dd, nu))) < 1e-4
        assert boundary_attachment(geo) < 1e-12


def test_chl_coordinates_round_trip(rng):
    for radius in (1.0, 2.0):
        for _ in range(8):
            p = rng.normal(size=2) + 1j * rng.normal(size=2)
            p *= radius / np.linalg.norm(p)
            z = random_interior(rng, 2) * radius
            v, zeta = bl.chl_coordinates_ball(p, z, radius)
            assert abs(zeta) < 1.0
            geo = bl.chl_geodesic(p, v, radius)
            assert np.abs(geo.point(np.array([zeta]))[:, 0] - z).max() < 1e-12


def test_chl_coordinates_example():
    v, zeta = bl.chl_coordinates_ball(np.array([1.0, 0.0]), np.array([0.5, 0.0]))
    assert np.abs(v - np.array([1.0, 0.0])).max() < 1e-14
    assert abs(zeta - 0.5) < 1e-14


def test_scalar_closed_forms(rng):
    z = np.zeros(2)
    w = np.array([0.3, 0.4])
    assert abs(bl.kobayashi_distance_ball(z, w) - np.arctanh(0.5)) < 1e-14
    assert abs(bl.green_ball(z, w) - np.log(0.5)) < 1e-14
    assert abs(bl.omega_ball(np.array([1.0, 0.0]), z) + 1.0) < 1e-15
    assert abs(bl.omega_ball(np.array([1.0, 0.0]), np.array([0.5, 0.0])) + 3.0) < 1e-14
    # distance symmetry
    for _ in range(10):
        a, b = random_interior(rng, 2), random_interior(rng, 2)
        assert abs(bl.kobayashi_distance_ball(a, b) - bl.kobayashi_distance_ball(b, a)) < 1e-13


def test_unitary_to_e1(rng):
    for n in (1, 2, 3):
        for _ in range(10):
            nu = rng.normal(size=n) + 1j * rng.normal(size=n)
            nu /= np.linalg.norm(nu)
            u_rot = bl.unitary_to_e1(nu)
            e1 = np.zeros(n)
            e1[0] = 1.0
            assert np.abs(u_rot @ nu - e1).max() < 1e-13
            assert np.abs(u_rot @ np.conj(u_rot.T) - np.eye(n)).max() < 1e-13


def test_degenerate_inputs():
    with pytest.raises(DomainError):
        bl.two_point_geodesic(np.array([0.2, 0.0]), np.array([0.2, 0.0]))
    with pytest.raises(DomainError):
        bl.chl_geodesic(np.array([1.0, 0.0]), np.array([0.0, 1.0]))  # tangential
