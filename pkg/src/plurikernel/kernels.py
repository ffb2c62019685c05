"""Invariant kernels of a strongly convex domain.

Everything is driven by geodesic solves:

* Kobayashi distance  k(z, w)   = atanh t   from the two-point solve;
* Kobayashi metric    kappa(z,v) = 1/t      from the direction solve;
* Green function      L_z0(z)   = log tanh k(z0, z) = log t;
* Poisson kernel      Omega_p(z) = -P(sigma)/v1^2 from the boundary-anchored
  normal-parametrization solve through z, where P is the disc Poisson kernel
  and v1 the pairing of the anchor direction with the outward normal.

On the ball all of these collapse to closed forms, which `method="auto"`
selects; `method="solver"` forces the generic path (used by the oracle
cross-checks).  The finite-difference checks at the bottom verify the
structural identities: Green-vs-Poisson duality, boundary growth rates,
degeneracy and plurisubharmonicity of the complex Hessians, and strong
convexity of the horosphere level sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from . import closedball as bl
from . import domains as dom
from . import geodesic as geo
from . import leftinv
from .errors import DomainError, EvaluationError
from .geodesic import DEFAULT_CONFIG, GeodesicDisc, SolverConfig

__all__ = [
    "CHLData",
    "CurveSpec",
    "disc_poisson",
    "poincare_distance",
    "kobayashi_distance",
    "kobayashi_metric",
    "green",
    "spherical_rep_interior",
    "chl_coordinates",
    "spherical_rep_boundary",
    "poisson",
    "horosphere_contains",
    "extremal_member",
    "boundary_limit",
    "gvp_check",
    "ma_check",
    "horosphere_convexity_check",
    "sample_levelset",
    "GreenField",
    "OmegaField",
    "OMEGA_STENCIL",
    "GREEN_STENCIL",
    "extrapolate_to_zero",
]

# Tightened solves used inside finite-difference stencils: differencing
# amplifies evaluation noise by 1/h^2, so these run each solve down to its
# least-squares stationary point (plateau), which is a smooth function of the
# data.  The two-point problem needs more modes than the boundary-anchored
# one: interior-interior geodesics on elongated ellipsoids decay slower.
OMEGA_STENCIL = SolverConfig(modes=32, newton_tol=1e-13, plateau_cap=1e-9,
                             chord=True, max_iter=60)
GREEN_STENCIL = SolverConfig(modes=48, newton_tol=1e-13, plateau_cap=1e-8,
                             chord=True, max_iter=60)
STENCIL_CONFIG = OMEGA_STENCIL


@dataclass(frozen=True)
class CHLData:
    """Normal-parametrization coordinates of a point: the geodesic direction
    v at the anchor p and the disc parameter zeta with phi_v(zeta) = z."""

    p: np.ndarray
    v: np.ndarray
    zeta: complex

    @property
    def v1(self) -> float:
        return float(np.real(bl.herm(self.v, self.p / np.linalg.norm(self.p))))


def disc_poisson(zeta: complex) -> float:
    """P(zeta) = (1 - |zeta|^2)/|1 - zeta|^2, the Poisson kernel of the disc
    with singularity at 1."""
    return float((1.0 - abs(zeta) ** 2) / abs(1.0 - zeta) ** 2)


def poincare_distance(z1: complex, z2: complex) -> float:
    m = abs(z1 - z2) / abs(1.0 - np.conj(z1) * z2)
    return float(np.arctanh(m))


def _closed(spec: dom.DomainSpec, method: str) -> bool:
    if method == "closed":
        if not spec.is_ball:
            raise DomainError("closed forms require the ball")
        return True
    return method == "auto" and spec.is_ball


# -- distances and the Green function -----------------------------------------


def kobayashi_distance(spec, z, w, cfg: SolverConfig = DEFAULT_CONFIG,
                       method: str = "auto") -> float:
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.linalg.norm(z - w) < 1e-14:
        return 0.0
    if _closed(spec, method):
        return bl.kobayashi_distance_ball(z, w)
    g = geo.solve_two_point(spec, z, w, cfg)
    return float(np.arctanh(g.meta["t"]))


def kobayashi_metric(spec, z, v, cfg: SolverConfig = DEFAULT_CONFIG,
                     method: str = "auto") -> float:
    if _closed(spec, method):
        return bl.kobayashi_metric_ball(z, v)
    g = geo.solve_direction(spec, z, v, cfg)
    return 1.0 / g.meta["t"]


def green(spec, z0, z, cfg: SolverConfig = DEFAULT_CONFIG, method: str = "auto") -> float:
    """Pluricomplex Green function with pole z0: log tanh k(z0, z) = log t."""
    z0 = np.asarray(z0, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if np.linalg.norm(z - z0) < 1e-12:
        raise EvaluationError("Green function has a logarithmic pole at z0")
    if _closed(spec, method):
        return bl.green_ball(z0, z)
    g = geo.solve_two_point(spec, z0, z, cfg)
    return float(np.log(g.meta["t"]))


def spherical_rep_interior(spec, z0, z, cfg: SolverConfig = DEFAULT_CONFIG,
                           method: str = "auto") -> np.ndarray:
    """Interior spherical representation: t phi'(0)/||phi'(0)|| for the
    geodesic with phi(0) = z0, phi(t) = z; the origin maps to O."""
    z0 = np.asarray(z0, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if np.linalg.norm(z - z0) < 1e-14:
        return np.zeros(spec.n)
    if _closed(spec, method):
        gb = bl.two_point_geodesic(z0, z)
        vel = gb.b - gb.a * gb.c
        return gb.meta["t"] * vel / np.linalg.norm(vel)
    g = geo.solve_two_point(spec, z0, z, cfg)
    vel = g.phi.eval(0.0, 1)
    return g.meta["t"] * vel / np.linalg.norm(vel)


# -- the boundary fibration and the Poisson kernel -----------------------------


def chl_coordinates(spec, p, z, cfg: SolverConfig = DEFAULT_CONFIG,
                    method: str = "auto", warm: GeodesicDisc | None = None) -> CHLData:
    p = np.asarray(p, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if _closed(spec, method):
        v, zeta = bl.chl_coordinates_ball(p, z)
        return CHLData(p, v, zeta)
    g = geo.solve_chl_through(spec, p, z, cfg, warm=warm)
    return CHLData(p, g.meta["v"], g.meta["sigma"])


def spherical_rep_boundary(spec, p, z, cfg: SolverConfig = DEFAULT_CONFIG,
                           method: str = "auto") -> np.ndarray:
    """Boundary spherical representation into the unit ball, in the model
    coordinates that send the outward normal at p to e1 (deterministic
    Householder rotation): e1 + (zeta - 1) v1 (U v)."""
    data = chl_coordinates(spec, p, z, cfg, method)
    nu = dom.normal(spec, data.p).nu
    rot = bl.unitary_to_e1(nu)
    v_rot = rot @ data.v
    out = (data.zeta - 1.0) * v_rot[0].real * v_rot
    out[0] += 1.0
    return out


def poisson(spec, p, z, cfg: SolverConfig = DEFAULT_CONFIG, method: str = "auto",
            warm: GeodesicDisc | None = None) -> float:
    """Pluricomplex Poisson kernel with boundary singularity p (negative)."""
    z = np.asarray(z, dtype=complex)
    if _closed(spec, method):
        return bl.omega_ball(np.asarray(p, dtype=complex), z)
    g = geo.solve_chl_through(spec, p, z, cfg, warm=warm)
    return -disc_poisson(g.meta["sigma"]) / g.meta["v1"] ** 2


def horosphere_contains(spec, p, radius: float, z,
                        cfg: SolverConfig = DEFAULT_CONFIG, method: str = "auto") -> bool:
    """Membership in the horosphere of radius R > 0 centered at p with the
    canonical pole: the sub-level set {Omega_p < -1/R}."""
    if radius <= 0:
        raise EvaluationError("horosphere radius must be positive")
    return poisson(spec, p, z, cfg, method) < -1.0 / radius


def extremal_member(spec, p, v, z, cfg: SolverConfig = DEFAULT_CONFIG,
                    method: str = "auto", geodesic: GeodesicDisc | None = None) -> float:
    """u_v(z) = -P(rho_tilde_v(z)) / v1^2: the member of the extremal family
    attached to the normal-parametrization geodesic for v."""
    p = np.asarray(p, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if geodesic is None:
        if _closed(spec, method):
            geodesic = geo.ball_geodesic(spec, p=p, v=v, cfg=cfg)
        else:
            geodesic = geo.solve_chl(spec, p, v, cfg)
    nu = dom.normal(spec, p).nu
    v1 = np.real(bl.herm(v, nu))
    zeta = leftinv.left_inverse(geodesic, z)
    return -disc_poisson(zeta) / v1**2


# -- warm-chained field evaluators ---------------------------------------------


def _holo_to_real_gradient(dz: np.ndarray) -> np.ndarray:
    """Real gradient (interleaved x, y) of a real function with holomorphic
    Wirtinger derivative dz: du/dx_j = 2 Re dz_j, du/dy_j = -2 Im dz_j."""
    out = np.empty(2 * dz.size)
    out[0::2] = 2.0 * dz.real
    out[1::2] = -2.0 * dz.imag
    return out


class GreenField:
    """z -> L_{z0}(z) with warm-started two-point solves (for stencils).

    The gradient is analytic: with z = phi(t) on its own geodesic, the
    competitor log|rho_tilde(w)| of the left inverse touches L from below
    along the disc, so the gradients agree there and
    d L/d z_j = phi_tilde_j(t) / (2 t).
    """

    def __init__(self, spec, z0, cfg: SolverConfig = GREEN_STENCIL, method: str = "auto"):
        self.spec = spec
        self.z0 = np.asarray(z0, dtype=complex)
        self.cfg = cfg
        self.closed = _closed(spec, method)
        self._last: GeodesicDisc | None = None

    def _solve(self, z) -> GeodesicDisc:
        g = geo.solve_two_point(self.spec, self.z0, z, self.cfg, warm=self._last)
        self._last = g
        return g

    def __call__(self, z) -> float:
        if self.closed:
            return bl.green_ball(self.z0, z)
        return float(np.log(self._solve(z).meta["t"]))

    def gradient(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.closed:
            gb = bl.two_point_geodesic(self.z0, z)
            t = gb.meta["t"]
            coeffs = gb.phi_tilde_coeffs(2)
            tilde_t = coeffs[:, 0] + t * coeffs[:, 1] + t * t * coeffs[:, 2]
        else:
            g = self._solve(z)
            t = g.meta["t"]
            tilde_t = g.phi_tilde.eval(complex(t))
        return _holo_to_real_gradient(tilde_t / (2.0 * t))


class OmegaField:
    """z -> Omega_p(z) with warm-started boundary-anchored solves.

    The gradient is analytic: the extremal member u_v attached to the
    geodesic through z touches Omega_p from below along the disc, so the
    gradients agree there; differentiating u_v = -P(rho_tilde_v)/v1^2 with
    the left-inverse derivative and dP/dzeta = (1 - zeta)^{-2} gives
    d Omega/d z_j = -phi_tilde_j(sigma) / (v1^2 (1 - sigma)^2)
    (the left-inverse denominator is -1 at points of the disc itself).
    """

    def __init__(self, spec, p, cfg: SolverConfig = OMEGA_STENCIL, method: str = "auto"):
        self.spec = spec
        self.p = np.asarray(p, dtype=complex)
        self.cfg = cfg
        self.closed = _closed(spec, method)
        self._last: GeodesicDisc | None = None

    def _solve(self, z) -> GeodesicDisc:
        g = geo.solve_chl_through(self.spec, self.p, z, self.cfg, warm=self._last)
        self._last = g
        return g

    def __call__(self, z) -> float:
        if self.closed:
            return bl.omega_ball(self.p, z)
        g = self._solve(z)
        return -disc_poisson(g.meta["sigma"]) / g.meta["v1"] ** 2

    def gradient(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.closed:
            # d/dz_j of -(1 - ||z||^2)/|1 - <z, p>|^2 in closed form
            a_fac = 1.0 - bl.herm(z, self.p)
            nz2 = float(np.vdot(z, z).real)
            dz = (np.conj(z) - (1.0 - nz2) * np.conj(self.p) / a_fac) / (
                a_fac * np.conj(a_fac)
            )
            return _holo_to_real_gradient(dz)
        g = self._solve(z)
        sigma = g.meta["sigma"]
        v1 = g.meta["v1"]
        tilde_s = g.phi_tilde.eval(complex(sigma))
        dz = -tilde_s / (v1**2 * (1.0 - sigma) ** 2)
        return _holo_to_real_gradient(dz)


def _field(kind: str, spec, z0, p, cfg, method):
    if kind == "green":
        if z0 is None:
            raise EvaluationError("green field needs the pole z0")
        return GreenField(spec, z0, cfg or GREEN_STENCIL, method)
    if kind == "poisson":
        if p is None:
            raise EvaluationError("poisson field needs the boundary point p")
        return OmegaField(spec, p, cfg or OMEGA_STENCIL, method)
    raise EvaluationError(f"unknown field {kind!r}")


# -- extrapolation helpers ------------------------------------------------------


def extrapolate_to_zero(steps, values) -> float:
    """Neville extrapolation of samples (h_i, f(h_i)) to h = 0."""
    hs = list(map(float, steps))
    tab = list(map(float, values))
    n = len(tab)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            tab[i] = tab[i] + (tab[i] - tab[i - 1]) * hs[i] / (hs[i - j] - hs[i])
    return tab[-1]


# -- curves and boundary asymptotics --------------------------------------------


@dataclass(frozen=True)
class CurveSpec:
    """Curve gamma: [0, 1] -> closure(D) with gamma(1) = p on the boundary and
    an analytic endpoint derivative gamma'(1)."""

    p: np.ndarray
    gamma: object  # callable t -> point
    gamma_prime_end: np.ndarray

    def __call__(self, t):
        return self.gamma(t)


def polynomial_curve(spec, p, derivative_end, quadratic=None, t_min: float = 0.5) -> CurveSpec:
    """gamma(t) = p - (1-t) gamma'(1) + (1-t)^2 b with prescribed endpoint
    derivative gamma'(1) = derivative_end, validated to stay interior on
    [t_min, 1)."""
    p = np.asarray(p, dtype=complex)
    a = -np.asarray(derivative_end, dtype=complex)
    b = np.zeros_like(a) if quadratic is None else np.asarray(quadratic, dtype=complex)

    def gamma(t):
        s = 1.0 - t
        return p + s * a + s * s * b

    # Near t = 1 the defining function value decays like (1-t) or (1-t)^2 and
    # drowns in rounding, so the interior check stops at 1 - 1e-4.
    for t in np.linspace(t_min, 1.0 - 1e-4, 41):
        if dom.r_eval(spec, gamma(t)) >= 0:
            raise DomainError(f"curve leaves the domain at t = {t:.4f}")
    return CurveSpec(p, gamma, -a)


def boundary_limit(spec, p, curve: CurveSpec, t_values,
                   cfg: SolverConfig | None = None, method: str = "auto") -> dict:
    """Products |Omega(gamma(t))| (1-t) along t_values increasing to 1, their
    extrapolated limit, and the analytic target Re(2/<gamma'(1), nu_p>)."""
    p = np.asarray(p, dtype=complex)
    nu = dom.normal(spec, p).nu
    pairing = bl.herm(curve.gamma_prime_end, nu)
    target = float(np.real(2.0 / pairing)) if abs(pairing) > 1e-14 else float("inf")
    omega = OmegaField(spec, p, cfg or OMEGA_STENCIL, method)
    products, steps = [], []
    achieved = None
    for t in sorted(map(float, t_values)):
        try:
            val = omega(curve(t))
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            return {
                "products": products,
                "limit": float("nan"),
                "target": target,
                "achieved_t": achieved,
                "error": f"evaluation failed at t={t:.6f}: {exc}",
            }
        products.append(abs(val) * (1.0 - t))
        steps.append(1.0 - t)
        achieved = t
    limit = extrapolate_to_zero(steps, products)
    return {
        "products": products,
        "limit": float(limit),
        "target": target,
        "achieved_t": achieved,
        "error": abs(limit - target) / max(abs(target), 1.0)
        if np.isfinite(target)
        else abs(limit),
    }


# -- Green-vs-Poisson duality ---------------------------------------------------


def gvp_check(spec, z0, p, steps=(1e-2, 5e-3, 2.5e-3),
              cfg: SolverConfig | None = None, method: str = "auto") -> dict:
    """Omega_p(z0) against the inward normal derivative of the Green function:
    the left side should equal lim_{h->0} L_{z0}(p - h nu_p)/h."""
    z0 = np.asarray(z0, dtype=complex)
    p = np.asarray(p, dtype=complex)
    nu = dom.normal(spec, p).nu
    lhs = poisson(spec, p, z0, cfg or OMEGA_STENCIL, method)
    gf = GreenField(spec, z0, cfg or GREEN_STENCIL, method)
    vals = [gf(p - h * nu) / h for h in steps]
    rhs = extrapolate_to_zero(steps, vals)
    return {"lhs": float(lhs), "rhs": float(rhs), "error": float(abs(lhs - rhs)),
            "samples": vals}


# -- finite-difference Hessians --------------------------------------------------


def _real_to_z(x: np.ndarray) -> np.ndarray:
    return x[0::2] + 1j * x[1::2]


def _real_hessian_fd(fn, x0: np.ndarray, h: float) -> np.ndarray:
    m = x0.size
    f0 = fn(_real_to_z(x0))
    hess = np.empty((m, m))
    for i in range(m):
        ei = np.zeros(m)
        ei[i] = h
        fp = fn(_real_to_z(x0 + ei))
        fm = fn(_real_to_z(x0 - ei))
        hess[i, i] = (fp - 2.0 * f0 + fm) / h**2
    for i in range(m):
        ei = np.zeros(m)
        ei[i] = h
        for j in range(i + 1, m):
            ej = np.zeros(m)
            ej[j] = h
            fpp = fn(_real_to_z(x0 + ei + ej))
            fpm = fn(_real_to_z(x0 + ei - ej))
            fmp = fn(_real_to_z(x0 - ei + ej))
            fmm = fn(_real_to_z(x0 - ei - ej))
            hess[i, j] = hess[j, i] = (fpp - fpm - fmp + fmm) / (4.0 * h**2)
    return hess


def _gradient_fd(fn, x0: np.ndarray, h: float) -> np.ndarray:
    m = x0.size
    grad = np.empty(m)
    for i in range(m):
        ei = np.zeros(m)
        ei[i] = h
        grad[i] = (fn(_real_to_z(x0 + ei)) - fn(_real_to_z(x0 - ei))) / (2.0 * h)
    return grad


def _real_hessian_from_gradient(grad_fn, x0: np.ndarray, h: float) -> np.ndarray:
    """Central differences of an analytic gradient; symmetrized."""
    m = x0.size
    cols = np.empty((m, m))
    for i in range(m):
        ei = np.zeros(m)
        ei[i] = h
        gp = grad_fn(_real_to_z(x0 + ei))
        gm = grad_fn(_real_to_z(x0 - ei))
        cols[:, i] = (gp - gm) / (2.0 * h)
    return 0.5 * (cols + cols.T)


def _complex_from_real_hessian(hess: np.ndarray) -> np.ndarray:
    n = hess.shape[0] // 2
    out = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            xx = hess[2 * j, 2 * k]
            yy = hess[2 * j + 1, 2 * k + 1]
            xy = hess[2 * j, 2 * k + 1]
            yx = hess[2 * j + 1, 2 * k]
            out[j, k] = 0.25 * ((xx + yy) + 1j * (xy - yx))
    return 0.5 * (out + np.conj(out.T))


def _to_real(z: np.ndarray) -> np.ndarray:
    out = np.empty(2 * z.size)
    out[0::2] = np.real(z)
    out[1::2] = np.imag(z)
    return out


def ma_check(kind: str, spec, z, h: float = 1e-3, *, z0=None, p=None,
             cfg: SolverConfig | None = None, method: str = "auto",
             richardson: bool = True, psh_tol: float = 1e-6,
             mode: str = "gradient") -> dict:
    """Degeneracy and plurisubharmonicity of the complex Hessian of the Green
    function (kind="green", pole z0) or the Poisson kernel (kind="poisson",
    singularity p) at the interior point z.

    The degeneracy ratio |det| / (trace/n)^n of the complex Hessian vanishes
    for solutions of the homogeneous complex Monge-Ampere equation; the
    smallest eigenvalue must not dip below -psh_tol.

    mode="gradient" (default) differences the analytic field gradients; the
    "value" mode differences the field values twice and serves as the
    independent cross-check of the gradient formulas.
    """
    z = np.asarray(z, dtype=complex)
    sing = np.asarray(z0 if kind == "green" else p, dtype=complex)
    if np.linalg.norm(z - sing) < 0.1:
        raise EvaluationError("evaluation point too close to the singularity")
    fn = _field(kind, spec, z0, p, cfg, method)
    x0 = _to_real(z)
    if mode == "gradient":
        hess = _real_hessian_from_gradient(fn.gradient, x0, h)
        if richardson:
            hess = (4.0 * _real_hessian_from_gradient(fn.gradient, x0, h / 2.0)
                    - hess) / 3.0
    else:
        hess = _real_hessian_fd(fn, x0, h)
        if richardson:
            hess = (4.0 * _real_hessian_fd(fn, x0, h / 2.0) - hess) / 3.0
    cpx = _complex_from_real_hessian(hess)
    eig = np.linalg.eigvalsh(cpx)
    trace = float(np.trace(cpx).real)
    ratio = abs(np.linalg.det(cpx)) / (trace / spec.n) ** spec.n
    return {
        "complex_hessian": cpx,
        "eigenvalues": eig,
        "min_eigenvalue": float(eig[0]),
        "degeneracy_ratio": float(ratio),
        "psh": bool(eig[0] >= -psh_tol),
    }


def horosphere_convexity_check(spec, p, z, h: float = 1e-3,
                               cfg: SolverConfig | None = None,
                               method: str = "auto") -> dict:
    """Minimum eigenvalue of the real Hessian of Omega_p restricted to the
    tangent space of its level set through z (positive iff the horosphere
    boundary is strongly convex there)."""
    z = np.asarray(z, dtype=complex)
    p = np.asarray(p, dtype=complex)
    if np.linalg.norm(z - p) < 0.1:
        raise EvaluationError("too close to the horosphere center")
    fn = _field("poisson", spec, None, p, cfg, method)
    x0 = _to_real(z)
    grad = fn.gradient(z)
    hess = (4.0 * _real_hessian_from_gradient(fn.gradient, x0, h / 2.0)
            - _real_hessian_from_gradient(fn.gradient, x0, h)) / 3.0
    qmat = np.linalg.qr(
        np.concatenate([grad[:, None] / np.linalg.norm(grad), np.eye(grad.size)], axis=1)
    )[0]
    tangent = qmat[:, 1 : grad.size]
    restricted = tangent.T @ hess @ tangent
    eig_r = np.linalg.eigvalsh(restricted)
    eig_f = np.linalg.eigvalsh(hess)
    return {
        "min_restricted_eigenvalue": float(eig_r[0]),
        "min_full_eigenvalue": float(eig_f[0]),
        "gradient_norm": float(np.linalg.norm(grad)),
    }


# -- level-set sampling ----------------------------------------------------------


def sample_levelset(spec, p, radius: float, count: int, seed: int = 0,
                    cfg: SolverConfig | None = None, method: str = "auto",
                    tol: float = 1e-6) -> tuple[np.ndarray, int]:
    """Points with Omega_p = -1/R found by root-finding along random rays from
    an interior anchor inside the horosphere.  Returns (points, skipped)."""
    if radius <= 0:
        raise EvaluationError("horosphere radius must be positive")
    p = np.asarray(p, dtype=complex)
    fn = _field("poisson", spec, None, p, cfg, method)
    nu = dom.normal(spec, p).nu
    # Anchor on the normal-parametrization geodesic for nu, where the kernel
    # value is exactly -P(r0) = -2/R: strictly inside the target level set.
    r0 = (2.0 - radius) / (2.0 + radius)
    if _closed(spec, method):
        anchor = bl.chl_geodesic(p, nu).point(np.array([r0]))[:, 0]
    else:
        anchor = geo.solve_chl(spec, p, nu, cfg or OMEGA_STENCIL).phi.eval(r0)
    level = -1.0 / radius
    rng = np.random.default_rng(seed)
    points = []
    skipped = 0
    while len(points) + skipped < count:
        d = rng.normal(size=2 * spec.n)
        d = _real_to_z(d / np.linalg.norm(d))

        def offset(u):
            return fn(anchor + u * d) - level

        u_hi = _ray_exit(spec, anchor, d) * (1.0 - 1e-7)
        try:
            if offset(u_hi) <= 0:
                skipped += 1
                continue
            u_star = brentq(offset, 0.0, u_hi, xtol=1e-14, rtol=8.9e-16)
        except (ValueError, EvaluationError, geo.SolverError):
            skipped += 1
            continue
        zpt = anchor + u_star * d
        if abs(fn(zpt) - level) <= tol:
            points.append(zpt)
        else:
            skipped += 1
    return np.asarray(points), skipped


def _ray_exit(spec, anchor, d) -> float:
    lo, hi = 0.0, 2.0 * spec.enclosing_radius()
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if dom.r_eval(spec, anchor + mid * d) < 0:
            lo = mid
        else:
            hi = mid
    return lo
