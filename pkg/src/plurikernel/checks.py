"""Verification suites.

Each suite runs a batch of identity checks at tolerances loaded from the
bundled defaults file (override path via the PLURIKERNEL_DEFAULTS environment
variable) and returns a JSON-serializable report:

    {"suite": name, "passed": bool, "tolerances": {...}, "cases": [...]}

Reports contain no timing or machine-dependent data, so runs with equal
configuration are byte-identical once serialized canonically.
"""

from __future__ import annotations

import json
import os
from importlib import resources

import numpy as np

from . import closedball as bl
from . import domains as dom
from . import geodesic as geo
from . import kernels as kn
from . import leftinv
from . import measure as ms
from .errors import DomainError
from .geodesic import SolverConfig

__all__ = ["load_defaults", "run_suite", "SUITES"]


def load_defaults() -> dict:
    path = os.environ.get("PLURIKERNEL_DEFAULTS")
    if path:
        with open(path) as fh:
            return json.load(fh)
    return json.loads(resources.files("plurikernel").joinpath("defaults.json").read_text())


def _interior_points(spec, count, rng, radius_cap=0.75):
    """Interior samples kept away from the boundary (solver-friendly)."""
    pts = dom.boundary_samples(spec, count, rng)
    scales = rng.uniform(0.15, radius_cap, count)
    return pts * scales[:, None]


def _admissible_direction(spec, p, rng, min_pairing=0.35):
    nu = dom.normal(spec, p).nu
    raw = rng.normal(size=spec.n) + 1j * rng.normal(size=spec.n)
    tang = raw - bl.herm(raw, nu) * nu
    nt = np.linalg.norm(tang)
    if nt > 1e-12:
        tang = tang / nt
    mix = rng.uniform(0.0, 1.2)
    v = nu + mix * tang
    v = v / np.linalg.norm(v)
    pairing = bl.herm(v, nu)
    v = v * np.exp(-1j * np.angle(pairing))
    if np.real(bl.herm(v, nu)) < min_pairing:
        v = nu
    return v


# -- suites --------------------------------------------------------------------


def check_oracle(spec, cfg: SolverConfig, seed: int, tols: dict) -> dict:
    """Ball: generic solver against the closed forms.  Other domains: the
    stationarity invariants are the oracle (boundary attachment, dual
    holomorphy, normalization, positivity)."""
    rng = np.random.default_rng(seed)
    cases = []
    count = tols["instances"]
    m = cfg.grid_size
    if spec.is_ball:
        cap = tols["point_radius"]
        for k in range(count):
            z, w = _interior_points(spec, 2, rng, cap)
            sol = geo.solve_two_point(spec, z, w, cfg)
            ref = geo.ball_geodesic(spec, z=z, w=w, cfg=cfg)
            sup = float(np.max(np.abs(sol.phi.boundary_values(m) - ref.phi.boundary_values(m))))
            cases.append({"case": f"two_point_{k}", "sup_norm": sup,
                          "passed": sup <= tols["sup_norm"]})
        for k in range(count):
            (z,) = _interior_points(spec, 1, rng, cap)
            v = rng.normal(size=spec.n) + 1j * rng.normal(size=spec.n)
            sol = geo.solve_direction(spec, z, v, cfg)
            ref = geo.ball_geodesic(spec, z=z, v=v, cfg=cfg)
            sup = float(np.max(np.abs(sol.phi.boundary_values(m) - ref.phi.boundary_values(m))))
            cases.append({"case": f"direction_{k}", "sup_norm": sup,
                          "passed": sup <= tols["sup_norm"]})
        for k in range(count):
            p = dom.boundary_samples(spec, 1, rng)[0]
            v = _admissible_direction(spec, p, rng)
            sol = geo.solve_chl(spec, p, v, cfg)
            ref = geo.ball_geodesic(spec, p=p, v=v, cfg=cfg)
            sup = float(np.max(np.abs(sol.phi.boundary_values(m) - ref.phi.boundary_values(m))))
            cases.append({"case": f"chl_{k}", "sup_norm": sup,
                          "passed": sup <= tols["sup_norm"]})
    else:
        zetas = 0.93 * np.exp(2j * np.pi * np.arange(tols["norm_one_samples"])
                              / tols["norm_one_samples"])
        for k in range(count):
            kind = ("two_point", "direction", "chl")[k % 3]
            if kind == "two_point":
                z, w = _interior_points(spec, 2, rng)
                sol = geo.solve_two_point(spec, z, w, cfg)
            elif kind == "direction":
                (z,) = _interior_points(spec, 1, rng)
                v = rng.normal(size=spec.n) + 1j * rng.normal(size=spec.n)
                sol = geo.solve_direction(spec, z, v, cfg)
            else:
                p = dom.boundary_samples(spec, 1, rng)[0]
                v = _admissible_direction(spec, p, rng)
                sol = geo.solve_chl(spec, p, v, cfg)
            rep = geo.residual_report(sol)
            pairing = np.sum(sol.phi_tilde.eval(zetas) * sol.phi.eval(zetas, 1), axis=0)
            norm_defect = float(np.max(np.abs(pairing - 1.0)))
            worst = max(rep["boundary_defect"], rep["dual_defect"], norm_defect)
            cases.append({
                "case": f"{kind}_{k}",
                "boundary_defect": rep["boundary_defect"],
                "dual_defect": rep["dual_defect"],
                "norm_one_defect": norm_defect,
                "mu_min": rep["mu_min"],
                "passed": worst <= tols["defect"] and rep["mu_min"] > 0,
            })
    return _report("oracle", tols, cases)


def check_gvp(spec, cfg: SolverConfig, seed: int, tols: dict) -> dict:
    rng = np.random.default_rng(seed)
    tol = tols["tol_ball"] if spec.is_ball else tols["tol_other"]
    cases = []
    for k in range(tols["pairs"]):
        (z0,) = _interior_points(spec, 1, rng, 0.6)
        p = dom.boundary_samples(spec, 1, rng)[0]
        rep = kn.gvp_check(spec, z0, p, steps=tuple(tols["steps"]))
        cases.append({"case": f"pair_{k}", "lhs": rep["lhs"], "rhs": rep["rhs"],
                      "error": rep["error"], "passed": rep["error"] <= tol})
    return _report("gvp", tols, cases)


def check_asymptotics(spec, cfg: SolverConfig, seed: int, tols: dict) -> dict:
    rng = np.random.default_rng(seed)
    t_vals = [1.0 - 0.1 * 0.5**k for k in range(tols["t_count"])]
    cases = []
    p = dom.boundary_samples(spec, 1, rng)[0]
    frame_pt = dom.normal(spec, p)
    nu = frame_pt.nu
    hess = dom.real_hessian(spec, p)
    scale = float(np.linalg.eigvalsh(hess).max())

    def tangential_quadratic(u):
        # inward curvature correction keeping p + s u + s^2 b interior
        bend = scale * float(np.vdot(u, u).real) / np.linalg.norm(dom.grad(spec, p))
        return -2.0 * bend * nu

    directions = [nu, 2.0 * nu, nu + 0.5 * frame_pt.frame[1]]
    while len(directions) < tols["curves"]:
        raw = rng.normal(size=spec.n) + 1j * rng.normal(size=spec.n)
        raw /= np.linalg.norm(raw)
        pairing = bl.herm(raw, nu)
        if pairing.real < 0.3:
            continue
        directions.append(raw)
    for k, u in enumerate(directions):
        curve = kn.polynomial_curve(spec, p, u, tangential_quadratic(u))
        rep = kn.boundary_limit(spec, p, curve, t_vals)
        cases.append({"case": f"curve_{k}", "limit": rep["limit"],
                      "target": rep["target"],
                      "error": rep["error"],
                      "passed": rep["error"] <= tols["rel_tol"]})
    # purely imaginary pairing: the limit must vanish
    u_t = 1j * nu
    curve = kn.polynomial_curve(spec, p, u_t, tangential_quadratic(u_t))
    rep = kn.boundary_limit(spec, p, curve, t_vals)
    cases.append({"case": "tangential_pairing", "limit": rep["limit"], "target": 0.0,
                  "error": abs(rep["limit"]),
                  "passed": abs(rep["limit"]) <= tols["tangential_tol"]})
    return _report("asymptotics", tols, cases)


def check_extremal(spec, cfg: SolverConfig, seed: int, tols: dict) -> dict:
    rng = np.random.default_rng(seed)
    n_v = max(1, int(round(np.sqrt(tols["pairs"] / 2))))
    n_z = int(np.ceil(tols["pairs"] / n_v))
    cases = []
    p = dom.boundary_samples(spec, 1, rng)[0]
    nu = dom.normal(spec, p).nu
    omega = kn.OmegaField(spec, p)
    pair_count = 0
    for kv in range(n_v):
        v = _admissible_direction(spec, p, rng)
        v1 = float(np.real(bl.herm(v, nu)))
        if spec.is_ball:
            g_v = geo.ball_geodesic(spec, p=p, v=v, cfg=cfg)
        else:
            g_v = geo.solve_chl(spec, p, v, cfg)
        worst = -np.inf
        for kz in range(n_z):
            if pair_count >= tols["pairs"]:
                break
            (z,) = _interior_points(spec, 1, rng)
            zeta = leftinv.left_inverse(g_v, z)
            u_val = -kn.disc_poisson(zeta) / v1**2
            worst = max(worst, u_val - omega(z))
            pair_count += 1
        cases.append({"case": f"v_{kv}", "max_gap": worst,
                      "passed": worst <= tols["gap_tol"]})
        # equality on the geodesic itself
        gap = 0.0
        for zeta in np.linspace(-0.7, 0.7, tols["on_disc_samples"]):
            z_on = g_v.phi.eval(complex(zeta))
            zeta_b = leftinv.left_inverse(g_v, z_on)
            u_val = -kn.disc_poisson(zeta_b) / v1**2
            gap = max(gap, abs(u_val - omega(z_on)))
        cases.append({"case": f"v_{kv}_on_disc", "max_gap": gap,
                      "passed": gap <= tols["on_disc_tol"]})
    return _report("extremal", tols, cases)


def check_ma(spec, cfg: SolverConfig, seed: int, tols: dict) -> dict:
    rng = np.random.default_rng(seed)
    cases = []
    h = tols["step"]
    (z0,) = _interior_points(spec, 1, rng, 0.4)
    p = dom.boundary_samples(spec, 1, rng)[0]
    pts = _interior_points(spec, 3 * tols["points"], rng, 0.55)
    for kind, sing in (("green", z0), ("poisson", p)):
        used = 0
        ratio_max = 0.0
        eig_min = np.inf
        for z in pts:
            if used >= tols["points"]:
                break
            if np.linalg.norm(z - sing) < tols["exclusion"] + 2 * h:
                continue
            rep = kn.ma_check(kind, spec, z, h, z0=z0, p=p, psh_tol=tols["psh_tol"])
            ratio_max = max(ratio_max, rep["degeneracy_ratio"])
            eig_min = min(eig_min, rep["min_eigenvalue"])
            used += 1
        cases.append({
            "case": kind,
            "points": used,
            "max_degeneracy_ratio": ratio_max,
            "min_eigenvalue": eig_min,
            "passed": ratio_max <= tols["ratio_tol"] and eig_min >= -tols["psh_tol"],
        })
    return _report("ma", tols, cases)


def check_convexity(spec, cfg: SolverConfig, seed: int, tols: dict) -> dict:
    rng = np.random.default_rng(seed)
    p = dom.boundary_samples(spec, 1, rng)[0]
    pts, skipped = kn.sample_levelset(spec, p, tols["radius"], tols["points"],
                                      seed=seed)
    cases = []
    for k, z in enumerate(pts):
        if np.linalg.norm(z - p) < 0.1 + 4 * tols["step"]:
            continue
        rep = kn.horosphere_convexity_check(spec, p, z, tols["step"])
        cases.append({"case": f"point_{k}",
                      "min_restricted_eigenvalue": rep["min_restricted_eigenvalue"],
                      "passed": rep["min_restricted_eigenvalue"] > 0})
    report = _report("convexity", tols, cases)
    report["skipped_rays"] = skipped
    return report


def check_reproduce(spec, cfg: SolverConfig, seed: int, tols: dict,
                    resolution: int | None = None, workers: int = 1) -> dict:
    rng = np.random.default_rng(seed)
    if resolution is None:
        resolution = tols["resolution_ball"] if spec.is_ball else tols["resolution_other"]
    tol = tols["tol_ball"] if spec.is_ball else tols["tol_other"]
    grid = ms.build_grid(spec, resolution)
    kappa = ms.calibrate_kappa(spec.n)
    funcs = {
        "one": ms.PluriharmonicPoly({}, 1.0),
        "re_z1": ms.PluriharmonicPoly({(1,) + (0,) * (spec.n - 1): 1.0}),
    }
    if spec.n == 2:
        funcs["re_z1z2_z1sq_plus2"] = ms.PluriharmonicPoly({(1, 1): 1.0, (2, 0): 1.0}, 2.0)
    pts = _interior_points(spec, tols["points"], rng, 0.55)
    cases = []
    for kz, z in enumerate(pts):
        omega_vals = ms.grid_omega_values(spec, grid, z, workers=workers)
        for name, func in funcs.items():
            rep = ms.reproduce_pluriharmonic(spec, func, z, grid, kappa,
                                             omega_vals=omega_vals)
            cases.append({"case": f"z{kz}_{name}", "estimate": rep["estimate"],
                          "reference": rep["reference"], "error": rep["error"],
                          "passed": rep["error"] <= tol})
    report = _report("reproduce", tols, cases)
    report["resolution"] = resolution
    report["kappa"] = kappa.kappa
    return report


def check_projection(spec, cfg: SolverConfig, seed: int, tols: dict) -> dict:
    rng = np.random.default_rng(seed)
    cases = []
    p = dom.boundary_samples(spec, 1, rng)[0]
    v = _admissible_direction(spec, p, rng)
    if spec.is_ball:
        g = geo.ball_geodesic(spec, p=p, v=v, cfg=cfg)
    else:
        g = geo.solve_chl(spec, p, v, cfg)
    # left-inverse identity on the disc
    worst = 0.0
    for zeta in np.linspace(-0.9, 0.9, tols["samples"]):
        worst = max(worst, abs(leftinv.left_inverse(g, g.phi.eval(complex(zeta))) - zeta))
    cases.append({"case": "left_inverse_identity", "error": worst,
                  "passed": worst <= tols["id_tol"]})
    # idempotence and kernel monotonicity under the projection
    omega = kn.OmegaField(spec, p)
    pts = _interior_points(spec, tols["random_points"], rng)
    idem = 0.0
    mono = -np.inf
    for z in pts:
        rho_z = leftinv.lempert_projection(g, z)
        rho2 = leftinv.lempert_projection(g, rho_z)
        idem = max(idem, float(np.max(np.abs(rho2 - rho_z))))
        mono = max(mono, omega(rho_z) - omega(z))
    cases.append({"case": "idempotence", "error": idem,
                  "passed": idem <= tols["idempotence_tol"]})
    cases.append({"case": "kernel_monotone_under_projection", "max_increase": mono,
                  "passed": mono <= tols["monotonicity_tol"]})
    # gradient of the left inverse against central differences
    worst = 0.0
    for z in pts[:10]:
        grad = leftinv.left_inverse_gradient(g, z)
        fd = np.zeros(spec.n, dtype=complex)
        for j in range(spec.n):
            e = np.zeros(spec.n)
            e[j] = 1e-5
            fd[j] = (leftinv.left_inverse(g, z + e) - leftinv.left_inverse(g, z - e)) / 2e-5
        denom = max(1.0, float(np.max(np.abs(grad))))
        worst = max(worst, float(np.max(np.abs(grad - fd))) / denom)
    cases.append({"case": "gradient_vs_fd", "error": worst,
                  "passed": worst <= tols["gradient_tol"]})
    # the non-linear retraction: idempotent, off the linear one by eps z2^2
    if spec.is_ball and spec.n >= 2:
        eps = 0.1
        rho = leftinv.example_retraction(eps, {(1, 1): lambda z: 1.0}, spec.n)
        z_t = np.zeros(spec.n, dtype=complex)
        z_t[1] = 0.5
        offset = rho(z_t)[0] - 0.0
        idem2 = 0.0
        for z in pts[:20]:
            idem2 = max(idem2, float(np.max(np.abs(rho(rho(z)) - rho(z)))))
        cases.append({"case": "example_retraction",
                      "offset": float(offset.real), "offset_expected": eps * 0.25,
                      "idempotence": idem2,
                      "passed": abs(offset - eps * 0.25) <= 1e-12 and idem2 <= 1e-12})
    return _report("projection", tols, cases)


def _report(name: str, tols: dict, cases: list) -> dict:
    return {
        "suite": name,
        "tolerances": tols,
        "cases": cases,
        "passed": bool(all(c["passed"] for c in cases)),
    }


SUITES = {
    "oracle": check_oracle,
    "gvp": check_gvp,
    "asymptotics": check_asymptotics,
    "extremal": check_extremal,
    "ma": check_ma,
    "convexity": check_convexity,
    "reproduce": check_reproduce,
    "projection": check_projection,
}


def run_suite(name: str, spec, cfg: SolverConfig | None = None, seed: int = 0,
              resolution: int | None = None, workers: int = 1,
              defaults: dict | None = None) -> dict:
    if name not in SUITES:
        raise DomainError(f"unknown check suite {name!r}")
    tols = (defaults or load_defaults())[name]
    cfg = cfg or SolverConfig()
    if name == "reproduce":
        return check_reproduce(spec, cfg, seed, tols, resolution, workers)
    return SUITES[name](spec, cfg, seed, tols)
