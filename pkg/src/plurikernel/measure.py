"""Boundary measure, quadrature, and the reproducing formula.

The positive (2n-1)-form

    omega = (dd^c r)^{n-1} ^ d^c r / ||dr||^n      restricted to the boundary,

with d^c = i(dbar - d), does not depend on the choice of defining function r.
Against the n-th power of the Poisson kernel it reproduces pluriharmonic
functions:

    F(z) = kappa_n * integral over the boundary of |Omega_p(z)|^n F(p) omega(p),

where kappa_n normalizes the total mass of the representing measure; it is
calibrated once per dimension on the unit ball (where |Omega_p(0)| = 1 for
every p by symmetry, so kappa_n is one over the omega-mass of the sphere) and
is domain independent.

Quadrature grids: trapezoid in the periodic chart angles, Gauss-Legendre in
the latitude parameter; weights carry the parametrization Jacobian, densities
are evaluated on the node's oriented orthonormal tangent frame.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import closedball as bl
from . import domains as dom
from . import geodesic as geo
from .errors import DomainError, EvaluationError
from .geodesic import SolverConfig
from .kernels import disc_poisson

__all__ = [
    "QuadratureGrid",
    "NormalizationConstant",
    "PluriharmonicPoly",
    "omega_density",
    "build_grid",
    "calibrate_kappa",
    "reproduce_pluriharmonic",
    "demailly_mass",
    "omega_values_csv",
]

QUAD_CONFIG = SolverConfig(modes=14, newton_tol=1e-8, chord=True)


@dataclass(frozen=True)
class NormalizationConstant:
    n: int
    kappa: float
    mass: float  # omega-mass of the unit sphere used in the calibration
    resolution: int


@dataclass(frozen=True)
class PluriharmonicPoly:
    """Re(holomorphic polynomial) + constant.

    terms maps exponent tuples (k_1, ..., k_n) to complex coefficients; the
    function is z -> Re(sum c_k z^k) + const.  This is the only test-function
    family the reproducing quadrature accepts: for non-pluriharmonic F the
    formula picks up an interior Monge-Ampere term that is out of scope here.
    """

    terms: dict
    const: float = 0.0

    def __call__(self, z) -> float:
        z = np.asarray(z, dtype=complex)
        val = 0.0 + 0.0j
        for powers, coef in self.terms.items():
            val += coef * np.prod(z ** np.asarray(powers))
        return float(val.real + self.const)


# -- the boundary form ---------------------------------------------------------


def _dc_on(gradient: np.ndarray, x: np.ndarray) -> float:
    """d^c r(X) = 2 Im(dr . X) for the holomorphic gradient dr."""
    return 2.0 * float(np.imag(np.dot(gradient, x)))


def _ddc_on(hess: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    """dd^c r(X, Y) = -4 Im sum_jk H_jk X_j conj(Y_k), H the complex Hessian."""
    return -4.0 * float(np.imag(np.dot(x, hess @ np.conj(y))))


def omega_density(spec: dom.DomainSpec, node: dom.BoundaryPoint,
                  grad_fn=None, hess_fn=None) -> float:
    """The boundary form evaluated on the node's oriented orthonormal frame.

    grad_fn/hess_fn override the defining-function derivatives (used by the
    invariance test that feeds an equivalent defining function)."""
    g = grad_fn(node.p) if grad_fn is not None else dom.grad(spec, node.p)
    norm_dr = 2.0 * np.linalg.norm(g)
    frame = node.frame
    if spec.n == 1:
        val = _dc_on(g, frame[0]) / norm_dr
    elif spec.n == 2:
        h = hess_fn(node.p) if hess_fn is not None else dom.complex_hessian(spec, node.p)
        t1, t2, t3 = frame
        val = (
            _ddc_on(h, t1, t2) * _dc_on(g, t3)
            - _ddc_on(h, t1, t3) * _dc_on(g, t2)
            + _ddc_on(h, t2, t3) * _dc_on(g, t1)
        ) / norm_dr**2
    else:
        raise DomainError("boundary form implemented for n <= 2")
    if val <= 0:
        raise EvaluationError(f"nonpositive boundary density {val:.3e} (degenerate frame?)")
    return float(val)


# -- quadrature grids ----------------------------------------------------------


@dataclass(frozen=True)
class QuadratureGrid:
    nodes: list  # BoundaryPoint per node
    weights: np.ndarray  # rule weight x parametrization Jacobian
    densities: np.ndarray  # omega on the oriented orthonormal frames
    resolution: int

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights * self.densities))

    def points(self) -> np.ndarray:
        return np.stack([node.p for node in self.nodes])


def _oriented_frame(spec, p, tangents) -> dom.BoundaryPoint:
    """Orthonormalize chart tangents, keeping the (nu, frame) orientation."""
    g = dom.grad(spec, p)
    nu = np.conj(g) / np.linalg.norm(g)
    basis = []
    for t in tangents:
        v = t.astype(complex)
        for b in basis:
            v = v - np.real(np.vdot(b, v)) * b
        v = v - np.real(np.vdot(nu, v)) * nu
        nv = np.linalg.norm(v)
        if nv < 1e-12:
            raise EvaluationError("degenerate chart tangents")
        basis.append(v / nv)
    frame = np.array(basis)
    mat = np.stack(
        [np.concatenate([vec.real, vec.imag]) for vec in [nu, *frame]]
    )
    # interleave real coords for the determinant test
    mat2 = np.empty((mat.shape[0], mat.shape[0]))
    ncomp = spec.n
    mat2[:, 0::2] = mat[:, :ncomp]
    mat2[:, 1::2] = mat[:, ncomp:]
    if np.linalg.det(mat2) < 0:
        frame[-1] = -frame[-1]
    return dom.BoundaryPoint(p, nu, frame)


def build_grid(spec: dom.DomainSpec, resolution: int) -> QuadratureGrid:
    """Tensor quadrature grid over the boundary chart.

    n = 1: trapezoid in the angle (exact for smooth periodic integrands);
    n = 2: Gauss-Legendre x trapezoid x trapezoid over (s, alpha, beta).
    """
    if spec.eps or spec.n > 2:
        raise DomainError("quadrature grids support unperturbed domains with n <= 2")
    if resolution < 4:
        raise DomainError("resolution too small")
    nodes, weights, densities = [], [], []
    if spec.n == 1:
        sa = 1.0 / np.sqrt(spec.a[0])
        for k in range(resolution):
            alpha = 2.0 * np.pi * k / resolution
            p = np.array([np.exp(1j * alpha) * sa])
            t_alpha = np.array([1j * np.exp(1j * alpha) * sa])
            node = _oriented_frame(spec, p, [t_alpha])
            jac = np.linalg.norm(t_alpha)
            nodes.append(node)
            weights.append(2.0 * np.pi / resolution * jac)
            densities.append(omega_density(spec, node))
    else:
        sa = 1.0 / np.sqrt(spec.axis)
        gl_x, gl_w = np.polynomial.legendre.leggauss(resolution)
        s_vals = 0.25 * np.pi * (gl_x + 1.0)
        s_wts = 0.25 * np.pi * gl_w
        ang = 2.0 * np.pi * np.arange(resolution) / resolution
        ang_w = 2.0 * np.pi / resolution
        for s, ws in zip(s_vals, s_wts):
            cs, sn = np.cos(s), np.sin(s)
            for alpha in ang:
                e_a = np.exp(1j * alpha)
                for beta in ang:
                    e_b = np.exp(1j * beta)
                    p = np.array([cs * e_a * sa[0], sn * e_b * sa[1]])
                    t_s = np.array([-sn * e_a * sa[0], cs * e_b * sa[1]])
                    t_a = np.array([1j * cs * e_a * sa[0], 0.0])
                    t_b = np.array([0.0, 1j * sn * e_b * sa[1]])
                    node = _oriented_frame(spec, p, [t_s, t_a, t_b])
                    jac = (
                        np.linalg.norm(t_s)
                        * np.linalg.norm(t_a)
                        * np.linalg.norm(t_b)
                    )
                    nodes.append(node)
                    weights.append(ws * ang_w**2 * jac)
                    densities.append(omega_density(spec, node))
    return QuadratureGrid(nodes, np.asarray(weights), np.asarray(densities), resolution)


def calibrate_kappa(n: int, resolution: int | None = None) -> NormalizationConstant:
    """kappa_n = 1 / (omega-mass of the unit sphere); the kernel factor
    |Omega_p(0)| is identically one there."""
    if resolution is None:
        resolution = 512 if n == 1 else 32
    grid = build_grid(dom.ball(n), resolution)
    mass = grid.mass
    return NormalizationConstant(n, 1.0 / mass, mass, resolution)


# -- kernel values over a grid ---------------------------------------------------


def _omega_chunk(args) -> np.ndarray:
    spec_dict, z, pts, cfg_kwargs = args
    spec = dom.parse_domain(spec_dict)
    cfg = SolverConfig(**cfg_kwargs)
    z = np.asarray(z, dtype=complex)
    out = np.empty(len(pts))
    warm = None
    for i, p in enumerate(pts):
        g = geo.solve_chl_through(spec, p, z, cfg, warm=warm)
        warm = g
        out[i] = -disc_poisson(g.meta["sigma"]) / g.meta["v1"] ** 2
    return out


def grid_omega_values(spec, grid: QuadratureGrid, z, cfg: SolverConfig = QUAD_CONFIG,
                      method: str = "auto", workers: int = 1) -> np.ndarray:
    """Omega_p(z) over all grid nodes (closed form on the ball, warm-started
    solver sweeps otherwise; node order is the grid's deterministic sweep)."""
    z = np.asarray(z, dtype=complex)
    pts = grid.points()
    if method == "closed" or (method == "auto" and spec.is_ball):
        nz2 = float(np.vdot(z, z).real)
        return -(1.0 - nz2) / np.abs(1.0 - pts @ np.conj(z)) ** 2
    cfg_kwargs = {
        "modes": cfg.modes, "grid": cfg.grid, "newton_tol": cfg.newton_tol,
        "max_iter": cfg.max_iter, "homotopy_steps": cfg.homotopy_steps,
        "chord": cfg.chord,
    }
    if workers <= 1:
        return _omega_chunk((dom.domain_to_dict(spec), z, pts, cfg_kwargs))
    chunks = np.array_split(np.arange(len(pts)), workers)
    jobs = [(dom.domain_to_dict(spec), z, pts[idx], cfg_kwargs) for idx in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_omega_chunk, jobs))
    return np.concatenate(parts)


# -- reproducing formula ----------------------------------------------------------


def reproduce_pluriharmonic(spec, func: PluriharmonicPoly, z, grid: QuadratureGrid,
                            kappa: NormalizationConstant | None = None,
                            cfg: SolverConfig = QUAD_CONFIG, method: str = "auto",
                            workers: int = 1,
                            omega_vals: np.ndarray | None = None) -> dict:
    """kappa_n-normalized boundary quadrature of |Omega_p(z)|^n F(p) against
    omega, compared with F(z)."""
    if not isinstance(func, PluriharmonicPoly):
        raise EvaluationError("only pluriharmonic test functions are accepted")
    z = np.asarray(z, dtype=complex)
    if dom.r_eval(spec, z) >= 0:
        raise EvaluationError("evaluation point must be interior")
    if kappa is None:
        kappa = calibrate_kappa(spec.n)
    if omega_vals is None:
        omega_vals = grid_omega_values(spec, grid, z, cfg, method, workers)
    fvals = np.array([func(node.p) for node in grid.nodes])
    estimate = kappa.kappa * float(
        np.sum(grid.weights * grid.densities * np.abs(omega_vals) ** spec.n * fvals)
    )
    reference = func(z)
    return {
        "estimate": estimate,
        "reference": reference,
        "error": abs(estimate - reference),
        "nodes": len(grid.nodes),
        "kappa": kappa.kappa,
    }


def demailly_mass(spec, z, grid: QuadratureGrid,
                  kappa: NormalizationConstant | None = None,
                  cfg: SolverConfig = QUAD_CONFIG, method: str = "auto",
                  workers: int = 1, omega_vals: np.ndarray | None = None) -> dict:
    """Total mass of the representing measure |Omega_p(z)|^n omega(p): the
    constant-one case of the reproducing quadrature (same code path)."""
    one = PluriharmonicPoly({}, const=1.0)
    out = reproduce_pluriharmonic(spec, one, z, grid, kappa, cfg, method, workers,
                                  omega_vals)
    out["mass"] = out.pop("estimate")
    return out


def omega_values_csv(grid: QuadratureGrid, omega_vals: np.ndarray) -> str:
    """Per-node kernel dump (coordinates, weight, density, kernel value)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    ncomp = grid.nodes[0].p.size
    header = [f"{c}{j+1}" for j in range(ncomp) for c in ("re_p", "im_p")]
    writer.writerow(header + ["weight", "density", "omega"])
    for node, w, d, o in zip(grid.nodes, grid.weights, grid.densities, omega_vals):
        row = []
        for j in range(ncomp):
            row += [repr(float(node.p[j].real)), repr(float(node.p[j].imag))]
        writer.writerow(row + [repr(float(w)), repr(float(d)), repr(float(o))])
    return buf.getvalue()
