"""Left inverses of geodesics, the associated linear retractions, and the
non-uniqueness counterexample.

For a geodesic triple (phi, phi_tilde, mu) the left inverse rho_tilde sends a
point z of the closed domain to the unique root zeta in the closed disc of

    h(zeta) = phi_tilde(zeta) . (z - phi(zeta))          (bilinear dot);

the root is unique because the boundary function winds exactly once.  The
retraction rho = phi o rho_tilde onto the geodesic has affine fibers, and is
the only holomorphic retraction with that property.
"""

from __future__ import annotations

import numpy as np

from . import domains as dom
from .closedball import herm
from .errors import EvaluationError
from .geodesic import GeodesicDisc
from .hardy import grid_points

__all__ = [
    "left_inverse",
    "lempert_projection",
    "left_inverse_gradient",
    "boundary_derivative",
    "example_retraction",
]

_GRID_RADII = (0.0, 0.35, 0.7, 0.95)
_ROOT_TOL = 1e-12


def _h_and_deriv(g: GeodesicDisc, z: np.ndarray, zeta):
    phi = g.phi.eval(zeta)
    tilde = g.phi_tilde.eval(zeta)
    diff = z[:, None] - phi if np.ndim(zeta) else z - phi
    h = np.sum(tilde * diff, axis=0)
    dh = np.sum(g.phi_tilde.eval(zeta, 1) * diff, axis=0) - np.sum(
        tilde * g.phi.eval(zeta, 1), axis=0
    )
    return h, dh


def left_inverse(g: GeodesicDisc, z, tol: float = 1e-10) -> complex:
    """The unique root of phi_tilde(zeta).(z - phi(zeta)) in the closed disc."""
    z = np.asarray(z, dtype=complex)
    if dom.r_eval(g.spec, z) > 1e-8:
        raise EvaluationError("point lies outside the closed domain")
    # Newton from the best point of a coarse grid; the argument-principle
    # integral is the derivative-free fallback (winding number is one).
    cand = np.array(
        [r * np.exp(2j * np.pi * k / 8) for r in _GRID_RADII for k in range(8)]
    )
    hv, _ = _h_and_deriv(g, z, cand)
    zeta = complex(cand[int(np.argmin(np.abs(hv)))])
    root = _newton_root(g, z, zeta, tol)
    if root is None:
        zeta = _winding_locator(g, z)
        root = _newton_root(g, z, zeta, tol)
        if root is None:
            raise EvaluationError(
                f"left-inverse root finding failed at z={z} (last guess {zeta})"
            )
    return root


def _newton_root(g, z, zeta, tol, max_iter: int = 60):
    for _ in range(max_iter):
        if abs(zeta) > 1.0:
            zeta = zeta / abs(zeta)
        h, dh = _h_and_deriv(g, z, zeta)
        if abs(dh) < 1e-14:
            return None
        step = h / dh
        zeta = zeta - step
        if abs(step) < 1e-15 or abs(h) < tol * 1e-2:
            break
    if abs(zeta) > 1.0 + 1e-8:
        return None
    if abs(zeta) > 1.0:
        zeta = zeta / abs(zeta)
    h, _ = _h_and_deriv(g, z, zeta)
    return complex(zeta) if abs(h) <= tol else None


def _winding_locator(g, z, samples: int = 4096, radius: float = 1.0 - 1e-6) -> complex:
    """(1/2 pi i) contour integral of zeta h'/h over |zeta| = radius by the
    trapezoid rule; equals the root when the winding number is one.  With
    zeta = radius e^{i theta} the measure d zeta/(2 pi i) becomes
    zeta d theta/(2 pi), so the integral is the grid mean of zeta^2 h'/h."""
    zeta = radius * grid_points(samples)
    h, dh = _h_and_deriv(g, z, zeta)
    return complex(np.mean(zeta * zeta * dh / h))


def lempert_projection(g: GeodesicDisc, z, tol: float = 1e-10) -> np.ndarray:
    """rho(z) = phi(rho_tilde(z)): the retraction onto the geodesic."""
    return g.phi.eval(left_inverse(g, z, tol))


def left_inverse_gradient(g: GeodesicDisc, z) -> np.ndarray:
    """Holomorphic gradient of the left inverse,
    d rho_tilde / d z_j = -phi_tilde(zeta) . e_j / (phi_tilde'(zeta).(z - phi(zeta)) - 1)
    evaluated at the solved zeta = rho_tilde(z)."""
    z = np.asarray(z, dtype=complex)
    zeta = left_inverse(g, z)
    tilde = g.phi_tilde.eval(zeta)
    denom = np.sum(g.phi_tilde.eval(zeta, 1) * (z - g.phi.eval(zeta))) - 1.0
    return -tilde / denom


def boundary_derivative(g: GeodesicDisc, p, w) -> complex:
    """d(rho_tilde)_p(w) = <w, nu_p> / <phi'(1), nu_p> at the boundary point
    p = phi(1) (Hermitian pairings)."""
    p = np.asarray(p, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.linalg.norm(g.phi.eval(1.0) - p) > 1e-8:
        raise EvaluationError("p is not the boundary anchor phi(1) of this geodesic")
    nu = dom.normal(g.spec, p).nu
    denom = herm(g.phi.eval(1.0, 1), nu)
    if abs(denom) < 1e-12:
        raise EvaluationError("tangential anchor: <phi'(1), nu_p> vanished")
    return herm(w, nu) / denom


def example_retraction(eps: float, f_jk: dict, n: int):
    """A holomorphic retraction of the unit ball onto the first-axis disc that
    is not the linear one (unless eps = 0): z maps to
    (z_1 + eps * sum_{j,k >= 2} z_j z_k f_jk(z), 0, ..., 0).

    f_jk maps index pairs (j, k) with 1 <= j, k < n (0-based: second to last
    components) to callables bounded by one on the ball.  Requires
    eps < 1/(2n); idempotence is immediate since the extra components vanish.
    """
    if not 0 <= eps < 1.0 / (2 * n):
        raise EvaluationError(f"eps must lie in [0, 1/(2n)) = [0, {1.0/(2*n):.4f})")

    def rho(z):
        z = np.asarray(z, dtype=complex)
        first = z[0]
        for (j, k), f in f_jk.items():
            if not (1 <= j < n and 1 <= k < n):
                raise EvaluationError("f_jk indices must address components 2..n")
            first = first + eps * z[j] * z[k] * f(z)
        out = np.zeros(n, dtype=complex)
        out[0] = first
        return out

    return rho
