"""Defining functions and boundary geometry of the supported domains.

A domain is given analytically by r(z) < 0 with

    r(z) = sum_j a_j |z_j|^2 - 1 + eps * bump(x1, y1, ..., xn, yn)

where the optional bump is a real polynomial in the real coordinates
(interleaved x_j = Re z_j, y_j = Im z_j).  kind selects the branch:
"ball" (all a_j = 1), "ellipsoid" (general positive a_j), or
"perturbed_ellipsoid" (eps > 0 with a validated convex bump).

Conventions used throughout the package:

* the holomorphic gradient is dr = (dr/dz_1, ..., dr/dz_n), so the real
  differential acts as  dr(w) = 2 Re(dr . w)  (bilinear dot);
* the complex vector representing the unit outward normal is
  nu = conj(dr)/||dr||;
* real Hessians are (2n x 2n) in the interleaved real coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "DomainSpec",
    "BoundaryPoint",
    "ball",
    "ellipsoid",
    "perturbed_ellipsoid",
    "r_eval",
    "grad",
    "real_hessian",
    "normal",
    "validate",
    "load_domain",
    "parse_domain",
    "domain_to_dict",
    "boundary_chart",
    "boundary_point_on_ray",
    "interior_samples",
    "boundary_samples",
]

_KINDS = ("ball", "ellipsoid", "perturbed_ellipsoid")


@dataclass(frozen=True)
class DomainSpec:
    """Analytic description of a bounded strongly convex domain in C^n."""

    kind: str
    n: int
    a: tuple[float, ...]
    eps: float = 0.0
    # bump terms: ((coef, (p_1, ..., p_2n)), ...) over interleaved real coords
    bump: tuple[tuple[float, tuple[int, ...]], ...] = field(default=())

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.n not in (1, 2, 3):
            raise DomainError(f"dimension must be 1, 2 or 3, got {self.n}")
        if len(self.a) != self.n or any(w <= 0 for w in self.a):
            raise DomainError("axis weights must be positive, one per dimension")
        if self.kind == "ball" and any(w != 1.0 for w in self.a):
            raise DomainError("ball must have unit axis weights")
        if self.kind != "perturbed_ellipsoid" and (self.eps != 0.0 or self.bump):
            raise DomainError("bump terms are only allowed on perturbed_ellipsoid")
        if self.eps < 0:
            raise DomainError("eps must be >= 0")
        for coef, powers in self.bump:
            if len(powers) != 2 * self.n or any(p < 0 for p in powers):
                raise DomainError("bump powers must be 2n nonnegative integers")

    @property
    def axis(self) -> np.ndarray:
        return np.asarray(self.a, dtype=float)

    @property
    def is_ball(self) -> bool:
        return self.kind == "ball" or (
            self.eps == 0.0 and len(set(self.a)) == 1 and self.a[0] == 1.0
        )

    def enclosing_radius(self) -> float:
        """Radius R with D contained in the ball of radius R about 0."""
        base = 1.0 / np.sqrt(min(self.a))
        return base * (1.2 if self.bump else 1.0)

    def bump_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.bump:
            return np.zeros(0), np.zeros((0, 2 * self.n), dtype=np.int64)
        coefs = np.array([c for c, _ in self.bump], dtype=float)
        pows = np.array([p for _, p in self.bump], dtype=np.int64)
        return coefs, pows


def ball(n: int) -> DomainSpec:
    return DomainSpec("ball", n, (1.0,) * n)


def ellipsoid(a) -> DomainSpec:
    a = tuple(float(x) for x in a)
    return DomainSpec("ellipsoid", len(a), a)


def perturbed_ellipsoid(a, eps: float, bump) -> DomainSpec:
    a = tuple(float(x) for x in a)
    terms = tuple((float(c), tuple(int(p) for p in pw)) for c, pw in bump)
    return DomainSpec("perturbed_ellipsoid", len(a), a, float(eps), terms)


# -- evaluation ---------------------------------------------------------------


def _to_real(z: np.ndarray) -> np.ndarray:
    """(..., n) complex -> (..., 2n) interleaved real coordinates."""
    out = np.empty(z.shape[:-1] + (2 * z.shape[-1],), dtype=float)
    out[..., 0::2] = z.real
    out[..., 1::2] = z.imag
    return out


def _bump_value(spec: DomainSpec, xy: np.ndarray) -> np.ndarray:
    coefs, pows = spec.bump_arrays()
    val = np.zeros(xy.shape[:-1])
    for c, p in zip(coefs, pows):
        val += c * np.prod(xy ** p, axis=-1)
    return val


def _bump_partial(spec: DomainSpec, xy: np.ndarray, axis: int) -> np.ndarray:
    coefs, pows = spec.bump_arrays()
    val = np.zeros(xy.shape[:-1])
    for c, p in zip(coefs, pows):
        if p[axis] == 0:
            continue
        q = p.copy()
        q[axis] -= 1
        val += c * p[axis] * np.prod(xy ** q, axis=-1)
    return val


def _bump_second(spec: DomainSpec, xy: np.ndarray, ax1: int, ax2: int) -> np.ndarray:
    coefs, pows = spec.bump_arrays()
    val = np.zeros(xy.shape[:-1])
    for c, p in zip(coefs, pows):
        q = p.copy()
        fac = q[ax1]
        if fac == 0:
            continue
        q[ax1] -= 1
        fac2 = q[ax2]
        if fac2 == 0:
            continue
        q[ax2] -= 1
        val += c * fac * fac2 * np.prod(xy ** q, axis=-1)
    return val


def r_eval(spec: DomainSpec, z) -> float | np.ndarray:
    """Defining function value; z is (..., n) complex (or scalar for n = 1)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    val = (np.abs(z) ** 2) @ spec.axis - 1.0
    if spec.eps:
        val = val + spec.eps * _bump_value(spec, _to_real(z))
    return val if val.ndim else float(val)


def grad(spec: DomainSpec, z) -> np.ndarray:
    """Holomorphic gradient dr, shape (..., n) complex."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    g = spec.axis * np.conj(z)
    if spec.eps:
        xy = _to_real(z)
        for j in range(spec.n):
            gx = _bump_partial(spec, xy, 2 * j)
            gy = _bump_partial(spec, xy, 2 * j + 1)
            g[..., j] += spec.eps * 0.5 * (gx - 1j * gy)
    return g


def real_hessian(spec: DomainSpec, z) -> np.ndarray:
    """Real Hessian of r in interleaved coordinates, shape (2n, 2n)."""
    z = np.asarray(z, dtype=complex)
    m = 2 * spec.n
    hess = np.zeros((m, m))
    for j in range(spec.n):
        hess[2 * j, 2 * j] = hess[2 * j + 1, 2 * j + 1] = 2.0 * spec.a[j]
    if spec.eps:
        xy = _to_real(z)
        for i in range(m):
            for j in range(i, m):
                v = spec.eps * _bump_second(spec, xy, i, j)
                hess[i, j] += v
                if i != j:
                    hess[j, i] += v
    return hess


def complex_hessian(spec: DomainSpec, z) -> np.ndarray:
    """Hermitian matrix d^2 r / dz_j dzbar_k, derived from the real Hessian."""
    h = real_hessian(spec, z)
    n = spec.n
    out = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            xx = h[2 * j, 2 * k]
            yy = h[2 * j + 1, 2 * k + 1]
            xy = h[2 * j, 2 * k + 1]
            yx = h[2 * j + 1, 2 * k]
            out[j, k] = 0.25 * ((xx + yy) + 1j * (xy - yx))
    return out


# -- boundary geometry --------------------------------------------------------


@dataclass(frozen=True)
class BoundaryPoint:
    """Boundary point with unit outward normal and an orthonormal tangent frame.

    nu is the complex vector representing the outward normal; frame holds
    2n-1 complex vectors t with Re<t, nu> = 0, orthonormal for the real inner
    product Re<u, v>, oriented so that (nu, frame) is positively oriented in
    R^{2n}.
    """

    p: np.ndarray
    nu: np.ndarray
    frame: np.ndarray  # (2n-1, n) complex


def _real_vec(v: np.ndarray) -> np.ndarray:
    return _to_real(v[None, :])[0]


def normal(spec: DomainSpec, p, tol: float = 1e-8) -> BoundaryPoint:
    p = np.asarray(p, dtype=complex)
    rp = r_eval(spec, p)
    if abs(rp) > tol:
        raise DomainError(f"point not on the boundary: |r(p)| = {abs(rp):.3e}")
    g = grad(spec, p)
    nu = np.conj(g) / np.linalg.norm(g)
    # Complete nu to an orthonormal real basis; Gram-Schmidt over the real
    # inner product Re<u, v>, seeded with i*nu and the coordinate directions.
    n = spec.n
    basis = [nu]
    candidates = [1j * nu]
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        candidates.append(e)
        candidates.append(1j * e)
    for c in candidates:
        v = c.copy()
        for b in basis:
            v = v - np.real(np.vdot(b, v)) * b
        nv = np.linalg.norm(v)
        if nv > 1e-10:
            basis.append(v / nv)
        if len(basis) == 2 * n:
            break
    frame = np.array(basis[1:])
    mat = np.stack([_real_vec(nu)] + [_real_vec(t) for t in frame])
    if np.linalg.det(mat) < 0:
        frame[-1] = -frame[-1]
    return BoundaryPoint(p, nu, frame)


def validate(spec: DomainSpec, samples: int = 1024, seed: int = 0) -> dict:
    """Check strong convexity and boundary consistency on sampled points.

    Returns a report; validation fails (ok = False) if the real Hessian of r
    is not positive definite at some boundary sample.
    """
    rng = np.random.default_rng(seed)
    try:
        pts = boundary_samples(spec, samples, rng)
    except DomainError as exc:
        # e.g. a perturbation so large that rays never exit: not a valid domain
        return {"ok": False, "min_hessian_eigenvalue": float("-inf"),
                "max_boundary_defect": float("inf"), "interior_ok": False,
                "samples": int(samples), "note": str(exc)}
    min_eig = np.inf
    max_r = 0.0
    for p in pts:
        max_r = max(max_r, abs(r_eval(spec, p)))
        eig = np.linalg.eigvalsh(real_hessian(spec, p)).min()
        min_eig = min(min_eig, eig)
    interior = interior_samples(spec, max(64, samples // 8), rng)
    interior_ok = bool(np.all(r_eval(spec, interior) < 0)) and r_eval(
        spec, np.zeros(spec.n, dtype=complex)
    ) < 0
    return {
        "ok": bool(min_eig > 0 and interior_ok),
        "min_hessian_eigenvalue": float(min_eig),
        "max_boundary_defect": float(max_r),
        "interior_ok": interior_ok,
        "samples": int(samples),
    }


def boundary_point_on_ray(spec: DomainSpec, direction) -> np.ndarray:
    """The unique boundary point c*direction with c > 0 (domains are star-shaped
    about the origin)."""
    d = np.asarray(direction, dtype=complex)
    nd = np.linalg.norm(d)
    if nd == 0:
        raise DomainError("zero direction")
    d = d / nd
    if not spec.eps:
        return d / np.sqrt((np.abs(d) ** 2) @ spec.axis)
    lo, hi = 0.0, spec.enclosing_radius() * 1.5
    if r_eval(spec, hi * d) <= 0:
        raise DomainError("enclosing radius too small; domain not validated?")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if r_eval(spec, mid * d) < 0:
            lo = mid
        else:
            hi = mid
    # Newton polish: dr/dc = 2 Re(dr . d)
    c = 0.5 * (lo + hi)
    for _ in range(8):
        val = r_eval(spec, c * d)
        der = 2.0 * np.real(np.dot(grad(spec, c * d), d))
        if der <= 0:
            break
        c = c - val / der
    return c * d


def boundary_chart(spec: DomainSpec, s, alpha, beta=None) -> np.ndarray:
    """Chart of the unperturbed ellipsoid boundary.

    n = 1:  z = e^{i alpha} / sqrt(a_1)                       (s ignored)
    n = 2:  z = (cos s e^{i alpha}/sqrt(a_1), sin s e^{i beta}/sqrt(a_2)),
            s in [0, pi/2], alpha, beta in [0, 2 pi).
    """
    if spec.eps:
        raise DomainError("chart only available for unperturbed domains")
    if spec.n == 1:
        z = np.exp(1j * np.asarray(alpha)) / np.sqrt(spec.a[0])
        return z[..., None] if np.ndim(z) else np.array([z])
    if spec.n == 2:
        s = np.asarray(s, dtype=float)
        z1 = np.cos(s) * np.exp(1j * np.asarray(alpha)) / np.sqrt(spec.a[0])
        z2 = np.sin(s) * np.exp(1j * np.asarray(beta)) / np.sqrt(spec.a[1])
        return np.stack(np.broadcast_arrays(z1, z2), axis=-1)
    raise DomainError("boundary chart restricted to n <= 2")


def boundary_samples(spec: DomainSpec, count: int, rng) -> np.ndarray:
    """count boundary points: chart-based for clean ellipsoids, ray-projected
    otherwise."""
    if spec.eps == 0.0 and spec.n <= 2:
        if spec.n == 1:
            return boundary_chart(spec, None, rng.uniform(0, 2 * np.pi, count))
        s = np.arccos(np.sqrt(rng.uniform(0, 1, count)))
        return boundary_chart(
            spec, s, rng.uniform(0, 2 * np.pi, count), rng.uniform(0, 2 * np.pi, count)
        )
    dirs = rng.normal(size=(count, 2 * spec.n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    zdirs = dirs[:, 0::2] + 1j * dirs[:, 1::2]
    return np.stack([boundary_point_on_ray(spec, d) for d in zdirs])


def interior_samples(spec: DomainSpec, count: int, rng) -> np.ndarray:
    """count strictly interior points, drawn uniformly-ish via ray scaling."""
    pts = boundary_samples(spec, count, rng)
    scale = rng.uniform(0.0, 0.95, count) ** (1.0 / (2 * spec.n))
    return pts * scale[:, None]


# -- serialization ------------------------------------------------------------


def parse_domain(data: dict) -> DomainSpec:
    try:
        kind = data["kind"]
    except KeyError as exc:
        raise DomainError("domain spec needs a 'kind' field") from exc
    if kind == "ball":
        return ball(int(data.get("n", len(data.get("a", (1.0,))))))
    if kind not in _KINDS:
        raise DomainError(f"unknown domain kind {kind!r}")
    a = data.get("a")
    if a is None:
        raise DomainError("ellipsoid spec needs axis weights 'a'")
    pert = data.get("perturbation")
    if kind == "perturbed_ellipsoid" or pert:
        if pert is None:
            raise DomainError("perturbed_ellipsoid needs a 'perturbation' block")
        terms = [(t["coef"], tuple(t["powers"])) for t in pert.get("bump", [])]
        spec = perturbed_ellipsoid(a, pert.get("eps", 0.0), terms)
        report = validate(spec, samples=512)
        if not report["ok"]:
            raise DomainError(
                "perturbation breaks strong convexity: "
                f"min Hessian eigenvalue {report['min_hessian_eigenvalue']:.3e}"
            )
        return spec
    return ellipsoid(a)


def load_domain(path) -> DomainSpec:
    with open(path) as fh:
        return parse_domain(json.load(fh))


def domain_to_dict(spec: DomainSpec) -> dict:
    out: dict = {"kind": spec.kind, "n": spec.n}
    if spec.kind != "ball":
        out["a"] = list(spec.a)
    if spec.kind == "perturbed_ellipsoid":
        out["perturbation"] = {
            "eps": spec.eps,
            "bump": [{"coef": c, "powers": list(p)} for c, p in spec.bump],
        }
    return out
