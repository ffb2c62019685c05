"""Closed forms on balls centered at the origin.

Geodesics of the ball of radius R are Moebius images of linear discs, so each
one used here has the rational form

    phi(zeta) = (a + zeta*b) / (1 + c*zeta),       |c| < 1,

with vector coefficients a, b and a scalar c.  For such discs the dual map
and the positive boundary density come out in closed form:

    mu(theta)       = mu0 * |1 + c e^{i theta}|^2,
    phi_tilde(zeta) = (mu0 / R^2) * (1 + c*zeta) * (conj(a)*zeta + conj(b)),

with mu0 fixed by the normalization phi_tilde . phi' = 1 (dot = bilinear).
These closed forms are the solver oracle, the Newton/homotopy initializers,
and the fast kernel path on the ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "BallGeodesic",
    "herm",
    "unitary_to_e1",
    "mobius_point",
    "mobius_fix1",
    "mobius_fix1_inverse",
    "two_point_geodesic",
    "direction_geodesic",
    "chl_geodesic",
    "chl_coordinates_ball",
    "kobayashi_distance_ball",
    "kobayashi_metric_ball",
    "green_ball",
    "omega_ball",
]


def herm(u, v) -> complex:
    """Hermitian pairing <u, v> = sum u_j conj(v_j)."""
    return complex(np.sum(np.asarray(u, dtype=complex) * np.conj(v)))


def bilin(u, v) -> complex:
    """Bilinear dot u . v = sum u_j v_j (no conjugation)."""
    return complex(np.sum(np.asarray(u, dtype=complex) * np.asarray(v, dtype=complex)))


def unitary_to_e1(nu: np.ndarray) -> np.ndarray:
    """Deterministic unitary with U @ nu = e1 (Householder plus a phase fix)."""
    nu = np.asarray(nu, dtype=complex)
    n = nu.size
    alpha = nu[0] / abs(nu[0]) if abs(nu[0]) > 1e-14 else 1.0
    e1 = np.zeros(n, dtype=complex)
    e1[0] = 1.0
    u = nu - alpha * e1
    nrm = np.linalg.norm(u)
    if nrm < 1e-14:
        return np.conj(alpha) * np.eye(n, dtype=complex)
    h = np.eye(n, dtype=complex) - 2.0 * np.outer(u, np.conj(u)) / nrm**2
    return np.conj(alpha) * h


def mobius_point(a: np.ndarray, w) -> np.ndarray:
    """The involutive ball automorphism swapping 0 and a, evaluated at w."""
    a = np.asarray(a, dtype=complex)
    w = np.asarray(w, dtype=complex)
    na2 = float(np.vdot(a, a).real)
    if na2 < 1e-30:
        return -w
    s = np.sqrt(1.0 - na2)
    proj = (herm(w, a) / na2) * a
    return (a - proj - s * (w - proj)) / (1.0 - herm(w, a))


def mobius_fix1(w: complex, zeta):
    """Disc automorphism with fixed point 1 and zero at w:
    theta(zeta) = (1-conj(w)) (zeta-w) / ((1-w)(1-conj(w) zeta))."""
    zeta = np.asarray(zeta, dtype=complex)
    return (1 - np.conj(w)) * (zeta - w) / ((1 - w) * (1 - np.conj(w) * zeta))


def mobius_fix1_inverse(w: complex, y):
    y = np.asarray(y, dtype=complex)
    return (y * (1 - w) + w * (1 - np.conj(w))) / (
        (1 - np.conj(w)) + y * np.conj(w) * (1 - w)
    )


@dataclass(frozen=True)
class BallGeodesic:
    """Rational geodesic phi(zeta) = (a + zeta b)/(1 + c zeta) of the ball of
    radius R about the origin."""

    a: np.ndarray
    b: np.ndarray
    c: complex
    radius: float = 1.0
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.a.size

    @property
    def mu0(self) -> float:
        """Scale of mu, from the normalization phi_tilde . phi' = 1."""
        denom = bilin(np.conj(self.b), self.b - self.a * self.c)
        if abs(denom.imag) > 1e-9 * abs(denom) or denom.real <= 0:
            raise DomainError("disc data is not a ball geodesic")
        return self.radius**2 / denom.real

    def point(self, zeta) -> np.ndarray:
        zeta = np.asarray(zeta, dtype=complex)
        return (self.a[..., None] + np.multiply.outer(self.b, zeta)) / (
            1.0 + self.c * zeta
        )

    def velocity(self, zeta) -> np.ndarray:
        zeta = np.asarray(zeta, dtype=complex)
        return np.multiply.outer(self.b - self.a * self.c, 1.0 / (1.0 + self.c * zeta) ** 2)

    def compose(self, w: complex) -> "BallGeodesic":
        """Precompose with the automorphism mobius_fix1(w, .); still rational."""
        cw = np.conj(w)
        beta = (1 - cw) / (1 - w)
        alpha = -beta * w
        a2 = self.a + self.b * alpha
        b2 = self.a * (-cw) + self.b * beta
        d0 = 1.0 + self.c * alpha
        d1 = -cw + self.c * beta
        return BallGeodesic(a2 / d0, b2 / d0, complex(d1 / d0), self.radius, dict(self.meta))

    def phi_coeffs(self, modes: int) -> np.ndarray:
        """Exact Taylor coefficients of phi through degree `modes`."""
        coeffs = np.zeros((self.n, modes + 1), dtype=complex)
        coeffs[:, 0] = self.a
        lead = self.b - self.a * self.c
        pow_c = 1.0 + 0.0j
        for k in range(1, modes + 1):
            coeffs[:, k] = lead * pow_c
            pow_c *= -self.c
        return coeffs

    def phi_tilde_coeffs(self, modes: int) -> np.ndarray:
        scale = self.mu0 / self.radius**2
        coeffs = np.zeros((self.n, max(modes, 2) + 1), dtype=complex)
        coeffs[:, 0] = scale * np.conj(self.b)
        coeffs[:, 1] = scale * (np.conj(self.a) + self.c * np.conj(self.b))
        coeffs[:, 2] = scale * self.c * np.conj(self.a)
        return coeffs[:, : modes + 1]

    def mu_trig(self) -> tuple[np.ndarray, np.ndarray]:
        """Cos/sin coefficients of mu(theta) = mu0 |1 + c e^{i theta}|^2."""
        m0 = self.mu0
        cos_c = np.array([m0 * (1.0 + abs(self.c) ** 2), 2.0 * m0 * self.c.real])
        sin_c = np.array([-2.0 * m0 * self.c.imag])
        return cos_c, sin_c


def _require_interior(radius: float, *points) -> None:
    for z in points:
        if np.linalg.norm(z) >= radius * (1.0 - 1e-12):
            raise DomainError("point not strictly inside the ball")


def _from_center_direction(z, u, radius, meta) -> BallGeodesic:
    """Geodesic zeta -> mobius_z(zeta u) of the unit ball, scaled by radius."""
    nz2 = float(np.vdot(z, z).real)
    if nz2 < 1e-30:
        a = np.zeros_like(u)
        b = -u
        c = 0.0 + 0.0j
    else:
        s = np.sqrt(1.0 - nz2)
        proj = (herm(u, z) / nz2) * z
        a = z.copy()
        b = -(proj + s * (u - proj))
        c = -herm(u, z)
    return BallGeodesic(a * radius, b * radius, complex(c), radius, meta)


def two_point_geodesic(z, w, radius: float = 1.0) -> BallGeodesic:
    """phi(0) = z, phi(t) = w with t in (0,1) solved in closed form."""
    z = np.asarray(z, dtype=complex) / radius
    w = np.asarray(w, dtype=complex) / radius
    _require_interior(1.0, z, w)
    m = mobius_point(z, w)
    t = float(np.linalg.norm(m))
    if t < 1e-14:
        raise DomainError("two-point data coincide")
    return _from_center_direction(z, m / t, radius, {"regime": "two_point", "t": t})


def direction_geodesic(z, v, radius: float = 1.0) -> BallGeodesic:
    """phi(0) = z, phi'(0) = t v with t > 0 solved in closed form."""
    z = np.asarray(z, dtype=complex) / radius
    v = np.asarray(v, dtype=complex) / radius
    _require_interior(1.0, z)
    if np.linalg.norm(v) < 1e-14:
        raise DomainError("zero direction")
    nz2 = float(np.vdot(z, z).real)
    s = np.sqrt(1.0 - nz2)
    # phi'(0) = A u with A = -s I + s/(1+s) z z^H; pick u = A^{-1} v, rescale.
    amat = -s * np.eye(z.size, dtype=complex) + (s / (1.0 + s)) * np.outer(z, np.conj(z))
    u = np.linalg.solve(amat, v)
    t = 1.0 / float(np.linalg.norm(u))
    return _from_center_direction(z, u * t, radius, {"regime": "direction", "t": t})


def chl_geodesic(p, v, radius: float = 1.0) -> BallGeodesic:
    """Normal-parametrization geodesic through the boundary point p:
    phi(1) = p, phi'(1) = <v, nu_p> v, Im <phi''(1), nu_p> = 0."""
    p = np.asarray(p, dtype=complex)
    v = np.asarray(v, dtype=complex)
    nu = p / radius
    v1 = herm(v, nu)
    if abs(v1.imag) > 1e-8 or v1.real <= 1e-12:
        raise DomainError("direction not admissible at p (pairing with the normal)")
    v1 = v1.real
    # Attached linear disc through p parallel to v: p + (zeta-1) R v1 v.
    big = radius * v1 * v
    geo = BallGeodesic(p - big, big, 0.0 + 0.0j, radius, {"regime": "chl", "v1": v1})
    if abs(radius - 1.0) < 1e-15:
        return geo
    # Reparametrize so that phi'(1) = v1 v: automorphism fixing 1 with
    # theta'(1) = 1/R; its second derivative stays real, so the Im-phi''
    # normalization is preserved.
    tau = (1.0 / radius - 1.0) / 2.0
    w = tau / (1.0 + tau)
    out = geo.compose(w)
    out.meta.update({"regime": "chl", "v1": v1})
    return out


def chl_coordinates_ball(p, z, radius: float = 1.0) -> tuple[np.ndarray, complex]:
    """Invert the normal-parametrization family: the unique (v, zeta) with the
    geodesic for v passing through z at zeta."""
    p = np.asarray(p, dtype=complex) / radius
    z = np.asarray(z, dtype=complex) / radius
    _require_interior(1.0, z)
    u_rot = unitary_to_e1(p)
    zr = u_rot @ z
    d = -zr
    d[0] += 1.0
    nd = float(np.linalg.norm(d))
    v_rot = d * abs(d[0]) / (d[0] * nd)
    zeta = 1.0 - d[0] * nd**2 / abs(d[0]) ** 2
    if radius != 1.0:
        tau = (1.0 / radius - 1.0) / 2.0
        w = tau / (1.0 + tau)
        zeta = mobius_fix1_inverse(w, zeta)
    return np.conj(u_rot.T) @ v_rot, complex(zeta)


# -- scalar closed forms ------------------------------------------------------


def kobayashi_distance_ball(z, w, radius: float = 1.0) -> float:
    z = np.asarray(z, dtype=complex) / radius
    w = np.asarray(w, dtype=complex) / radius
    return float(np.arctanh(np.linalg.norm(mobius_point(z, w))))


def kobayashi_metric_ball(z, v, radius: float = 1.0) -> float:
    z = np.asarray(z, dtype=complex) / radius
    v = np.asarray(v, dtype=complex) / radius
    nz2 = float(np.vdot(z, z).real)
    nv2 = float(np.vdot(v, v).real)
    cross = abs(herm(v, z)) ** 2
    return float(np.sqrt(nv2 * (1.0 - nz2) + cross) / (1.0 - nz2))


def green_ball(z0, z, radius: float = 1.0) -> float:
    return float(np.log(np.tanh(kobayashi_distance_ball(z0, z, radius))))


def omega_ball(p, z, radius: float = 1.0) -> float:
    """-(1 - ||z||^2)/|1 - <z, p>|^2 on the ball of the given radius."""
    p = np.asarray(p, dtype=complex) / radius
    z = np.asarray(z, dtype=complex) / radius
    nz2 = float(np.vdot(z, z).real)
    return float(-(1.0 - nz2) / abs(1.0 - herm(z, p)) ** 2)
