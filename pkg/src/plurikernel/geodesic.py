"""Solver for complex geodesics of strongly convex domains.

A geodesic is represented by the triple (phi, phi_tilde, mu): the disc map,
its dual, and the positive boundary density tying them together along the
boundary,

    phi_tilde(e^{i theta}) = e^{i theta} mu(theta) dr_{phi(e^{i theta})},
    phi_tilde . phi' = 1           (bilinear dot, imposed at zeta = 0),
    r(phi(e^{i theta})) = 0.

Discretization: unknowns are the Taylor coefficients of phi (frequencies
0..N per component), the real trig coefficients of q with mu = exp(q) (which
keeps mu positive without an inequality constraint), plus the scalar
parameters of the boundary-condition regime.  The residual demands r(phi) = 0
on the grid, vanishing negative-frequency content of
e^{i theta} mu dr(phi), the normalization at 0, and the regime's
interpolation rows.  Gauss-Newton with forward-difference Jacobians and a
least-squares solve; homotopy continuation from an enclosing round ball where
everything is known in closed form.

Regimes
-------
two_point    phi(0) = z, phi(t) = w, scalar t in (0, 1)
direction    phi(0) = z, phi'(0) = t v, scalar t > 0
chl          phi(1) = p, phi'(1) = <v, nu_p> v, Im <phi''(1), nu_p> = 0
chl_through  normal parametrization at p passing through an interior z:
             phi(sigma) = z with unknown sigma in the disc, plus the two
             normalization rows of the chl regime.

The chl_through regime is what makes kernel evaluation near the boundary
well conditioned: anchoring the parametrization at an interior point would
concentrate all Fourier content near one mode as z approaches the boundary,
while the normal parametrization keeps coefficients tame and only sends
sigma -> 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, lstsq

from . import closedball as bl
from . import domains as dom
from . import hardy
from ._core import eval_r_grad
from .errors import DomainError, SolverError

__all__ = [
    "SolverConfig",
    "GeodesicDisc",
    "solve_two_point",
    "solve_direction",
    "solve_chl",
    "solve_chl_through",
    "ball_geodesic",
    "residual_report",
    "disc_to_dict",
    "disc_from_dict",
]


@dataclass(frozen=True)
class SolverConfig:
    modes: int = 64
    grid: int | None = None
    newton_tol: float = 1e-10
    max_iter: int = 50
    damping: tuple[float, ...] = (1.0, 0.5, 0.25, 0.125, 0.0625)
    homotopy_steps: int = 8
    seed: int = 0
    fd_step: float = 1e-7
    max_substeps: int = 48
    chord: bool = False  # reuse the Jacobian across iterations (warm solves)
    # Accept a converged-but-nonzero least-squares plateau up to this size.
    # Stencil evaluations set it: running each solve to its stationary point
    # makes the result a smooth function of the data, which finite
    # differencing then tolerates.
    plateau_cap: float | None = None

    def __post_init__(self):
        if self.newton_tol <= 0:
            raise ValueError("newton_tol must be positive")
        if self.homotopy_steps < 1:
            raise ValueError("homotopy_steps must be >= 1")

    @property
    def grid_size(self) -> int:
        return self.grid if self.grid is not None else hardy.default_grid(self.modes)


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class GeodesicDisc:
    """Solved geodesic: disc map, dual map, boundary density, and metadata."""

    phi: hardy.AnalyticDisc
    phi_tilde: hardy.AnalyticDisc
    mu: hardy.RealTrigPoly
    spec: dom.DomainSpec
    meta: dict
    residuals: dict

    @property
    def n(self) -> int:
        return self.phi.ncomp

    def boundary_point(self) -> np.ndarray:
        """phi(1), the boundary point the parametrization is anchored at."""
        return self.phi.eval(1.0)


# -- packing ------------------------------------------------------------------


class _Problem:
    """Discretized residual map for one (spec, regime, data) triple."""

    def __init__(self, spec: dom.DomainSpec, regime: str, data: dict, cfg: SolverConfig):
        self.spec = spec
        self.regime = regime
        self.data = data
        self.cfg = cfg
        self.n = spec.n
        self.modes = cfg.modes
        self.grid = cfg.grid_size
        self.nphi = 2 * self.n * (self.modes + 1)
        self.nq = 2 * self.modes + 1
        self.nscal = {"two_point": 1, "direction": 1, "chl": 0, "chl_through": 2}[regime]
        self.dim = self.nphi + self.nq + self.nscal
        self.eitheta = np.exp(1j * hardy.grid_angles(self.grid))
        self.kidx = np.arange(self.modes + 1, dtype=float)
        self.bump_coefs, self.bump_pows = spec.bump_arrays()

    # packing ---------------------------------------------------------------

    def pack(self, phi_coeffs: np.ndarray, q: hardy.RealTrigPoly, scal) -> np.ndarray:
        x = np.empty(self.dim)
        fl = phi_coeffs.reshape(-1)
        x[0 : self.nphi : 2] = fl.real
        x[1 : self.nphi : 2] = fl.imag
        x[self.nphi : self.nphi + self.modes + 1] = q.cos_coeffs
        x[self.nphi + self.modes + 1 : self.nphi + self.nq] = q.sin_coeffs
        if self.nscal:
            x[self.nphi + self.nq :] = scal
        return x

    def unpack(self, x: np.ndarray):
        phi = (x[0 : self.nphi : 2] + 1j * x[1 : self.nphi : 2]).reshape(
            self.n, self.modes + 1
        )
        qc = x[self.nphi : self.nphi + self.modes + 1]
        qs = x[self.nphi + self.modes + 1 : self.nphi + self.nq]
        scal = x[self.nphi + self.nq :]
        return phi, hardy.RealTrigPoly(qc.copy(), qs.copy()), scal

    # residuals ---------------------------------------------------------------

    def _phi_batch(self, xb: np.ndarray) -> np.ndarray:
        return (xb[:, 0 : self.nphi : 2] + 1j * xb[:, 1 : self.nphi : 2]).reshape(
            xb.shape[0], self.n, self.modes + 1
        )

    def _mu_batch(self, xb: np.ndarray) -> np.ndarray:
        b = xb.shape[0]
        qc = xb[:, self.nphi : self.nphi + self.modes + 1]
        qs = xb[:, self.nphi + self.modes + 1 : self.nphi + self.nq]
        half = np.zeros((b, self.grid // 2 + 1), dtype=complex)
        half[:, 0] = qc[:, 0]
        half[:, 1 : self.modes + 1] = 0.5 * (qc[:, 1:] - 1j * qs)
        return np.exp(np.fft.irfft(half * self.grid, self.grid, axis=-1))

    def residual_batch(self, xb: np.ndarray) -> np.ndarray:
        b, m, n = xb.shape[0], self.grid, self.n
        phi = self._phi_batch(xb)
        scal = xb[:, self.nphi + self.nq :]
        spec_pad = np.zeros((b, n, m), dtype=complex)
        spec_pad[:, :, : self.modes + 1] = phi
        vals = np.fft.ifft(spec_pad, axis=-1) * m  # (b, n, m) boundary values
        mu = self._mu_batch(xb)  # (b, m)
        rv, gv = eval_r_grad(
            vals.transpose(0, 2, 1).reshape(-1, n),
            self.spec.axis,
            self.spec.eps,
            self.bump_coefs,
            self.bump_pows,
        )
        rv = rv.reshape(b, m)
        gfun = self.eitheta[None, :, None] * mu[:, :, None] * gv.reshape(b, m, n)
        ghat = np.fft.fft(gfun, axis=1) / m
        neg = ghat[:, m // 2 + 1 :, :].reshape(b, -1)
        norm_res = np.sum(ghat[:, 0, :] * phi[:, :, 1], axis=1) - 1.0
        rows = [rv, neg.real, neg.imag, norm_res.real[:, None], norm_res.imag[:, None]]
        rows.extend(self._regime_rows(phi, scal))
        return np.concatenate(rows, axis=1)

    def _regime_rows(self, phi: np.ndarray, scal: np.ndarray) -> list[np.ndarray]:
        d = self.data
        k = self.kidx

        def c2r(arr):
            return np.concatenate([arr.real, arr.imag], axis=1)

        at0 = phi[:, :, 0]
        if self.regime == "two_point":
            t = scal[:, 0]
            tp = np.cumprod(
                np.concatenate([np.ones((phi.shape[0], 1)), np.repeat(t[:, None], self.modes, 1)], 1),
                axis=1,
            )
            at_t = np.einsum("bnk,bk->bn", phi, tp.astype(complex))
            return [c2r(at0 - d["z"]), c2r(at_t - d["w"])]
        if self.regime == "direction":
            t = scal[:, 0]
            return [c2r(at0 - d["z"]), c2r(phi[:, :, 1] - t[:, None] * d["v"])]
        at1 = phi.sum(axis=2)
        d1 = (phi * k).sum(axis=2)
        d2 = (phi * (k * (k - 1.0))).sum(axis=2)
        nu = d["nu"]
        herm1 = np.sum(d1 * np.conj(nu), axis=1)
        herm2 = np.sum(d2 * np.conj(nu), axis=1)
        if self.regime == "chl":
            target = d["v1"] * d["v"]
            return [c2r(at1 - d["p"]), c2r(d1 - target), herm2.imag[:, None]]
        if self.regime == "chl_through":
            sig = scal[:, 0] + 1j * scal[:, 1]
            sp = np.cumprod(
                np.concatenate(
                    [np.ones((phi.shape[0], 1), dtype=complex), np.repeat(sig[:, None], self.modes, 1)], 1
                ),
                axis=1,
            )
            at_s = np.einsum("bnk,bk->bn", phi, sp)
            gauge = (np.sum(np.abs(d1) ** 2, axis=1) - herm1.real)[:, None]
            return [c2r(at_s - d["z"]), c2r(at1 - d["p"]), gauge, herm2.imag[:, None]]
        raise ValueError(f"unknown regime {self.regime!r}")

    def clamp(self, x: np.ndarray) -> np.ndarray:
        if self.regime == "two_point":
            x[-1] = min(max(x[-1], 1e-9), 1.0 - 1e-13)
        elif self.regime == "direction":
            x[-1] = max(x[-1], 1e-9)
        elif self.regime == "chl_through":
            sig = complex(x[-2], x[-1])
            if abs(sig) > 1.0 - 1e-13:
                sig *= (1.0 - 1e-12) / abs(sig)
                x[-2], x[-1] = sig.real, sig.imag
        return x


def _make_step_solver(jac: np.ndarray, chord: bool):
    """Least-squares step solver for a fixed Jacobian.

    Chord mode amortizes repeated solves with the same Jacobian by caching a
    Cholesky factorization of the normal equations (the squared condition
    number only degrades the step direction, which damped Gauss-Newton
    tolerates); otherwise each Jacobian is used once and gelsy is cheapest.
    """
    if chord:
        ata = jac.T @ jac
        ata[np.diag_indices_from(ata)] += 1e-14 * float(np.max(np.diag(ata)))
        try:
            fac = cho_factor(ata, lower=True, check_finite=False)
            return lambda rhs: cho_solve(fac, jac.T @ rhs, check_finite=False)
        except LinAlgError:
            pass
    return lambda rhs: lstsq(jac, rhs, cond=1e-13, lapack_driver="gelsy",
                             check_finite=False)[0]


def _newton(problem: _Problem, x0: np.ndarray, tol: float, max_iter: int) -> tuple[np.ndarray, dict]:
    cfg = problem.cfg
    x = problem.clamp(x0.copy())
    fval = problem.residual_batch(x[None, :])[0]
    nrm = float(np.linalg.norm(fval))
    best_x, best_nrm = x.copy(), nrm
    iters = 0
    stall = 0
    solve_step = None  # cached least-squares solver for chord iterations
    fresh = False
    for _ in range(max_iter):
        if nrm <= tol:
            break
        if solve_step is None or not cfg.chord:
            cols = np.eye(problem.dim) * cfg.fd_step
            fb = problem.residual_batch(x[None, :] + cols)
            jac = (fb - fval).T / cfg.fd_step
            solve_step = _make_step_solver(jac, cfg.chord)
            fresh = True
        step = solve_step(-fval)
        if float(np.linalg.norm(step)) <= 1e-13 * (1.0 + float(np.linalg.norm(x))):
            break  # stationary point of the least-squares landscape
        accepted = False
        improved = False
        for lam in cfg.damping:
            xt = problem.clamp(x + lam * step)
            ft = problem.residual_batch(xt[None, :])[0]
            nt = float(np.linalg.norm(ft))
            if nt < nrm * (1.0 - 0.2 * lam) or nt <= tol:
                x, fval, nrm = xt, ft, nt
                accepted = True
                break
            if nt < nrm:  # sub-factor progress still counts near the plateau
                x, fval, nrm = xt, ft, nt
                improved = True
                break
        if not accepted:
            if cfg.chord and not fresh:
                solve_step = None  # stale Jacobian: rebuild and retry
                continue
            stall += 1
            if not improved and stall >= 2:
                break
        else:
            fresh = False
            stall = 0
        if nrm < best_nrm:
            best_x, best_nrm = x.copy(), nrm
        iters += 1
    if best_nrm < nrm:
        x, nrm = best_x, best_nrm
    report = {"newton_residual": nrm, "iterations": iters}
    cap = tol if cfg.plateau_cap is None else max(tol, cfg.plateau_cap)
    if not np.isfinite(nrm) or nrm > cap:
        raise SolverError(f"Newton stalled at residual {nrm:.3e} (tol {tol:.1e})", report)
    return x, report


# -- homotopy path ------------------------------------------------------------


def _homotopy_spec(spec: dom.DomainSpec, s: float) -> dom.DomainSpec:
    if s >= 1.0:
        return spec
    amin = float(min(spec.a))
    a_s = tuple((1.0 - s) * amin + s * aj for aj in spec.a)
    eps_s = s * spec.eps
    if eps_s > 0:
        return dom.DomainSpec("perturbed_ellipsoid", spec.n, a_s, eps_s, spec.bump)
    if all(abs(aj - 1.0) < 1e-15 for aj in a_s):
        return dom.DomainSpec("ball", spec.n, a_s)
    return dom.DomainSpec("ellipsoid", spec.n, a_s)


def _step_data(regime: str, data: dict, spec_s: dom.DomainSpec) -> dict:
    if regime in ("two_point", "direction"):
        return data
    out = dict(data)
    p_s = dom.boundary_point_on_ray(spec_s, data["p"])
    nu_s = dom.normal(spec_s, p_s).nu
    out["p"], out["nu"] = p_s, nu_s
    if regime == "chl":
        pairing = bl.herm(data["v"], nu_s)
        if abs(pairing) < 1e-8:
            raise SolverError("direction became tangential along the homotopy path")
        v_s = data["v"] * np.exp(-1j * np.angle(pairing))
        out["v"], out["v1"] = v_s, abs(pairing)
    return out


def _ball_initial(problem: _Problem, spec0: dom.DomainSpec, data0: dict) -> np.ndarray:
    """Pack the closed-form geodesic of the round domain spec0 (equal axes)."""
    radius = 1.0 / np.sqrt(spec0.a[0])
    regime = problem.regime
    if regime == "two_point":
        geo = bl.two_point_geodesic(data0["z"], data0["w"], radius)
        scal = [geo.meta["t"]]
    elif regime == "direction":
        geo = bl.direction_geodesic(data0["z"], data0["v"], radius)
        scal = [geo.meta["t"]]
    elif regime == "chl":
        geo = bl.chl_geodesic(data0["p"], data0["v"], radius)
        scal = []
    elif regime == "chl_through":
        v0, sig0 = bl.chl_coordinates_ball(data0["p"], data0["z"], radius)
        geo = bl.chl_geodesic(data0["p"], v0, radius)
        scal = [sig0.real, sig0.imag]
    else:
        raise ValueError(regime)
    m = problem.grid
    phi_coeffs = geo.phi_coeffs(problem.modes)
    mu_cos, mu_sin = geo.mu_trig()
    mu_vals = hardy.RealTrigPoly(mu_cos, mu_sin).values(m)
    q = hardy.RealTrigPoly.from_samples(np.log(mu_vals), problem.modes)
    return problem.pack(phi_coeffs, q, scal)


def _pack_warm(problem: _Problem, warm: GeodesicDisc) -> np.ndarray:
    phi = np.zeros((problem.n, problem.modes + 1), dtype=complex)
    upto = min(problem.modes, warm.phi.degree)
    phi[:, : upto + 1] = warm.phi.coeffs[:, : upto + 1]
    mu_vals = warm.mu.values(problem.grid)
    q = hardy.RealTrigPoly.from_samples(np.log(np.maximum(mu_vals, 1e-300)), problem.modes)
    meta = warm.meta
    if problem.regime == "two_point":
        scal = [meta.get("t", 0.5)]
    elif problem.regime == "direction":
        scal = [meta.get("t", 1.0)]
    elif problem.regime == "chl_through":
        sig = complex(*meta["sigma"]) if isinstance(meta.get("sigma"), (list, tuple)) else meta.get("sigma", 0j)
        scal = [sig.real, sig.imag]
    else:
        scal = []
    return problem.pack(phi, q, scal)


def _solve(spec: dom.DomainSpec, regime: str, data: dict, cfg: SolverConfig,
           warm: GeodesicDisc | None = None) -> GeodesicDisc:
    problem = _Problem(spec, regime, _step_data(regime, data, spec) if regime.startswith("chl") else data, cfg)
    if warm is not None:
        try:
            x0 = _pack_warm(problem, warm)
            x, rep = _newton(problem, x0, cfg.newton_tol, cfg.max_iter)
            return _finish(problem, x, rep, homotopy_used=0)
        except SolverError:
            pass  # fall through to the homotopy path

    round_spec = _homotopy_spec(spec, 0.0)
    same = all(abs(aj - spec.a[0]) < 1e-15 for aj in spec.a) and spec.eps == 0.0
    s_targets = [1.0] if same else [k / cfg.homotopy_steps for k in range(1, cfg.homotopy_steps + 1)]
    try:
        x = _ball_initial(problem, round_spec, _step_data(regime, data, round_spec)
                          if regime.startswith("chl") else data)
    except DomainError as exc:
        raise SolverError(f"initializer failed: {exc}") from exc

    steps_done = 0
    s_prev = 0.0
    queue = list(s_targets)
    substeps = 0
    rep: dict = {}
    while queue:
        s = queue[0]
        spec_s = _homotopy_spec(spec, s)
        prob_s = _Problem(spec_s, regime, _step_data(regime, data, spec_s)
                          if regime.startswith("chl") else data, cfg)
        # Intermediate homotopy steps only need a loose solve.
        tol_s = cfg.newton_tol if s >= 1.0 else max(cfg.newton_tol, 1e-9)
        try:
            x, rep = _newton(prob_s, x, tol_s, cfg.max_iter)
        except SolverError as exc:
            substeps += 1
            if substeps > cfg.max_substeps or (s - s_prev) < 1e-4:
                exc.report.update({"homotopy_s": s, "substeps": substeps})
                raise
            queue.insert(0, 0.5 * (s_prev + s))
            continue
        queue.pop(0)
        s_prev = s
        steps_done += 1
        problem = prob_s
    return _finish(problem, x, rep, homotopy_used=steps_done)


def _finish(problem: _Problem, x: np.ndarray, rep: dict, homotopy_used: int) -> GeodesicDisc:
    phi_c, q, scal = problem.unpack(x)
    m, n, modes = problem.grid, problem.n, problem.modes
    spec_pad = np.zeros((n, m), dtype=complex)
    spec_pad[:, : modes + 1] = phi_c
    vals = np.fft.ifft(spec_pad, axis=-1) * m
    mu_vals = np.exp(q.values(m))
    _, gv = eval_r_grad(vals.T, problem.spec.axis, problem.spec.eps,
                        problem.bump_coefs, problem.bump_pows)
    gfun = problem.eitheta[:, None] * mu_vals[:, None] * gv  # (m, n)
    ghat = np.fft.fft(gfun, axis=0) / m
    tilde = hardy.AnalyticDisc(ghat[: modes + 1, :].T.copy())
    mu = hardy.RealTrigPoly.from_samples(mu_vals, modes)
    phi = hardy.AnalyticDisc(phi_c)

    meta: dict = {"regime": problem.regime}
    d = problem.data
    if problem.regime == "two_point":
        meta.update(z=d["z"], w=d["w"], t=float(scal[0]))
    elif problem.regime == "direction":
        meta.update(z=d["z"], v=d["v"], t=float(scal[0]))
    elif problem.regime == "chl":
        meta.update(p=d["p"], v=d["v"], v1=float(d["v1"]), nu=d["nu"])
    else:
        sigma = complex(scal[0], scal[1])
        d1 = phi.eval(1.0, 1)
        v = d1 / np.linalg.norm(d1)
        meta.update(
            z=d["z"], p=d["p"], nu=d["nu"], sigma=sigma, v=v,
            v1=float(np.real(bl.herm(v, d["nu"]))),
        )
    disc = GeodesicDisc(phi, tilde, mu, problem.spec, meta, {})
    res = residual_report(disc)
    res["newton_residual"] = rep.get("newton_residual", float("nan"))
    res["iterations"] = rep.get("iterations", 0)
    res["homotopy_steps_used"] = homotopy_used
    tail = np.max(np.abs(phi_c[:, -max(2, modes // 8):])) / max(np.max(np.abs(phi_c)), 1e-300)
    res["tail"] = float(tail)
    res["under_resolved"] = bool(tail > 1e-10)
    disc.residuals.update(res)
    return disc


# -- public API ---------------------------------------------------------------


def _as_point(x, n: int) -> np.ndarray:
    z = np.asarray(x, dtype=complex).reshape(-1)
    if z.size != n:
        raise DomainError(f"expected a point of C^{n}, got {z.size} components")
    return z


def solve_two_point(spec: dom.DomainSpec, z, w, cfg: SolverConfig = DEFAULT_CONFIG,
                    warm: GeodesicDisc | None = None) -> GeodesicDisc:
    """Geodesic with phi(0) = z and phi(t) = w for a solved t in (0, 1)."""
    z, w = _as_point(z, spec.n), _as_point(w, spec.n)
    if np.linalg.norm(z - w) < 1e-12:
        raise DomainError("two-point data coincide")
    for pt in (z, w):
        if dom.r_eval(spec, pt) >= 0:
            raise DomainError("two-point data must be strictly interior")
    return _solve(spec, "two_point", {"z": z, "w": w}, cfg, warm)


def solve_direction(spec: dom.DomainSpec, z, v, cfg: SolverConfig = DEFAULT_CONFIG,
                    warm: GeodesicDisc | None = None) -> GeodesicDisc:
    """Geodesic with phi(0) = z and phi'(0) = t v for a solved t > 0."""
    z, v = _as_point(z, spec.n), _as_point(v, spec.n)
    if np.linalg.norm(v) < 1e-14:
        raise DomainError("direction must be nonzero")
    if dom.r_eval(spec, z) >= 0:
        raise DomainError("base point must be strictly interior")
    return _solve(spec, "direction", {"z": z, "v": v}, cfg, warm)


def solve_chl(spec: dom.DomainSpec, p, v, cfg: SolverConfig = DEFAULT_CONFIG,
              warm: GeodesicDisc | None = None) -> GeodesicDisc:
    """Geodesic through the boundary point p in the normal parametrization
    attached to the admissible direction v."""
    p, v = _as_point(p, spec.n), _as_point(v, spec.n)
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise DomainError("direction must be a unit vector")
    v = v / np.linalg.norm(v)
    nu = dom.normal(spec, p).nu
    pairing = bl.herm(v, nu)
    if abs(pairing.imag) > 1e-10:
        raise DomainError("pairing with the normal must be real (rotate v)")
    if pairing.real < 1e-8:
        raise DomainError("direction is tangential at p")
    data = {"p": p, "v": v, "v1": pairing.real, "nu": nu}
    return _solve(spec, "chl", data, cfg, warm)


def solve_chl_through(spec: dom.DomainSpec, p, z, cfg: SolverConfig = DEFAULT_CONFIG,
                      warm: GeodesicDisc | None = None) -> GeodesicDisc:
    """Normal-parametrization geodesic anchored at the boundary point p and
    passing through the interior point z (at the solved meta['sigma'])."""
    p, z = _as_point(p, spec.n), _as_point(z, spec.n)
    if dom.r_eval(spec, z) >= 0:
        raise DomainError("through-point must be strictly interior")
    return _solve(spec, "chl_through", {"p": p, "z": z}, cfg, warm)


def ball_geodesic(spec: dom.DomainSpec, *, z=None, w=None, v=None, p=None,
                  cfg: SolverConfig = DEFAULT_CONFIG) -> GeodesicDisc:
    """Closed-form geodesic of the ball, packaged as a GeodesicDisc.

    Pass (z, w) for the two-point regime, (z, v) for the direction regime, or
    (p, v) for the normal parametrization at a boundary point.
    """
    if not spec.is_ball:
        raise DomainError("closed forms only available on the ball")
    n = spec.n
    if p is not None:
        geo = bl.chl_geodesic(_as_point(p, n), _as_point(v, n))
    elif w is not None:
        geo = bl.two_point_geodesic(_as_point(z, n), _as_point(w, n))
    elif v is not None:
        geo = bl.direction_geodesic(_as_point(z, n), _as_point(v, n))
    else:
        raise DomainError("need (z, w), (z, v) or (p, v)")
    return package_ball_geodesic(geo, spec, cfg)


def package_ball_geodesic(geo: bl.BallGeodesic, spec: dom.DomainSpec,
                          cfg: SolverConfig = DEFAULT_CONFIG) -> GeodesicDisc:
    phi = hardy.AnalyticDisc(geo.phi_coeffs(cfg.modes))
    tilde = hardy.AnalyticDisc(geo.phi_tilde_coeffs(cfg.modes))
    cos_c, sin_c = geo.mu_trig()
    pad_c = np.zeros(cfg.modes + 1)
    pad_s = np.zeros(cfg.modes)
    pad_c[: cos_c.size] = cos_c
    pad_s[: sin_c.size] = sin_c
    mu = hardy.RealTrigPoly(pad_c, pad_s)
    meta = dict(geo.meta)
    meta["closed_form"] = True
    if meta.get("regime") == "chl":
        nu = geo.a + geo.b  # phi(1) = p; normal of the ball at p is p/R
        meta["p"] = nu
        meta["nu"] = nu / np.linalg.norm(nu)
        meta["v"] = geo.b / np.linalg.norm(geo.b)
    disc = GeodesicDisc(phi, tilde, mu, spec, meta, {})
    disc.residuals.update(residual_report(disc))
    return disc


# -- residual report ----------------------------------------------------------


_SAMPLE_RADII = (0.0, 0.35, 0.65, 0.9)


def residual_report(g: GeodesicDisc, grid_size: int | None = None) -> dict:
    """The four invariant defects of a geodesic triple, recomputed from scratch."""
    spec = g.spec
    m = grid_size or hardy.default_grid(max(g.phi.degree, g.mu.degree))
    vals = g.phi.boundary_values(m).T  # (m, n)
    coefs, pows = spec.bump_arrays()
    rv, gv = eval_r_grad(vals, spec.axis, spec.eps, coefs, pows)
    mu_vals = g.mu.values(m)
    eith = np.exp(1j * hardy.grid_angles(m))
    gfun = eith[:, None] * mu_vals[:, None] * gv
    tilde_vals = g.phi_tilde.boundary_values(m).T
    zetas = np.array(
        [r * np.exp(2j * np.pi * k / 8) for r in _SAMPLE_RADII for k in range(8)]
    )
    pairing = np.sum(g.phi_tilde.eval(zetas) * g.phi.eval(zetas, 1), axis=0)
    norm_defect = float(np.max(np.abs(pairing - 1.0)))
    return {
        "boundary_defect": float(np.max(np.abs(rv))),
        "dual_defect": float(np.max(np.abs(gfun - tilde_vals))),
        "norm_defect": float(norm_defect),
        "mu_min": float(np.min(mu_vals)),
    }


# -- serialization ------------------------------------------------------------


def _c_list(arr: np.ndarray) -> list:
    arr = np.asarray(arr)
    if arr.ndim == 0:
        return [float(np.real(arr)), float(np.imag(arr))]
    return [_c_list(sub) for sub in arr]


def _c_array(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def disc_to_dict(g: GeodesicDisc) -> dict:
    meta = {}
    for key, val in g.meta.items():
        if isinstance(val, np.ndarray) or isinstance(val, complex):
            meta[key] = _c_list(np.asarray(val, dtype=complex))
        else:
            meta[key] = val
    return {
        "phi": _c_list(g.phi.coeffs),
        "phi_tilde": _c_list(g.phi_tilde.coeffs),
        "mu_cos": list(map(float, g.mu.cos_coeffs)),
        "mu_sin": list(map(float, g.mu.sin_coeffs)),
        "domain": dom.domain_to_dict(g.spec),
        "meta": meta,
        "residuals": {k: v for k, v in g.residuals.items() if not isinstance(v, list)},
    }


_META_COMPLEX = {"z", "w", "v", "p", "nu", "sigma"}


def disc_from_dict(data: dict) -> GeodesicDisc:
    spec = dom.parse_domain(data["domain"])
    meta = {}
    for key, val in data["meta"].items():
        if key in _META_COMPLEX:
            arr = _c_array(val)
            meta[key] = complex(arr) if arr.ndim == 0 else arr
        else:
            meta[key] = val
    return GeodesicDisc(
        hardy.AnalyticDisc(_c_array(data["phi"])),
        hardy.AnalyticDisc(_c_array(data["phi_tilde"])),
        hardy.RealTrigPoly(np.asarray(data["mu_cos"]), np.asarray(data["mu_sin"])),
        spec,
        meta,
        dict(data.get("residuals", {})),
    )
