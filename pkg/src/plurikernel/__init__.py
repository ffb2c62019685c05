"""Complex geodesics, pluricomplex Green functions and Poisson kernels on
smooth strongly convex domains in C^n, with boundary quadrature and a
verification CLI."""

import os as _os

# All dense linear algebra here is small (a few hundred rows); threaded BLAS
# oversubscribes badly on small kernels, so pin it unless the user overrides.
try:
    import threadpoolctl as _threadpoolctl

    _threadpoolctl.threadpool_limits(int(_os.environ.get("PLURIKERNEL_BLAS_THREADS", "1")))
except Exception:  # pragma: no cover - best effort only
    pass

from ._core import BACKEND as core_backend
from .domains import DomainSpec, ball, ellipsoid, perturbed_ellipsoid, load_domain
from .geodesic import (
    GeodesicDisc,
    SolverConfig,
    ball_geodesic,
    residual_report,
    solve_chl,
    solve_chl_through,
    solve_direction,
    solve_two_point,
)

__version__ = "0.1.0"

__all__ = [
    "DomainSpec",
    "GeodesicDisc",
    "SolverConfig",
    "ball",
    "ball_geodesic",
    "core_backend",
    "ellipsoid",
    "load_domain",
    "perturbed_ellipsoid",
    "residual_report",
    "solve_chl",
    "solve_chl_through",
    "solve_direction",
    "solve_two_point",
]
