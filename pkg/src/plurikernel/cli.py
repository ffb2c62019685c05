"""Command-line front end.

Commands
--------
plurikernel domain validate --domain spec.json
plurikernel geodesic {two-point|direction|chl} --domain spec.json ...
plurikernel kernel {green|poisson|kobayashi|metric} --domain spec.json ...
plurikernel levelset --domain spec.json --p ... --R ... --count N
plurikernel check {oracle|gvp|asymptotics|extremal|ma|convexity|reproduce|projection}

Points on the command line are flat real lists [Re z1, Im z1, ...].  All
JSON/CSV output embeds the configuration digest and the library version;
identical configurations produce byte-identical output (floats are printed
with shortest round-trip representation).  Exit codes: 0 success, 1 check
failure, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from . import checks
from . import domains as dom
from . import geodesic as geo
from . import kernels as kn
from .errors import DomainError, EvaluationError, PlurikernelError, SolverError

USAGE_ERROR = 2
NUMERIC_ERROR = 3


def _parse_point(text: str, n: int) -> np.ndarray:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"cannot parse point {text!r}") from exc
    if len(vals) != 2 * n:
        raise DomainError(
            f"point needs {2 * n} reals (flat [Re z1, Im z1, ...]), got {len(vals)}"
        )
    arr = np.asarray(vals)
    return arr[0::2] + 1j * arr[1::2]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [_jsonable(complex(v)) for v in obj.reshape(-1)]
        return [_jsonable(v) for v in obj.reshape(-1)]
    return obj


def _digest(payload: dict) -> str:
    canon = json.dumps(_jsonable(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _emit_json(payload: dict, config: dict) -> None:
    payload = dict(payload)
    payload["version"] = __version__
    payload["config_digest"] = _digest(config)
    sys.stdout.write(json.dumps(_jsonable(payload), sort_keys=True, indent=1))
    sys.stdout.write("\n")


def _solver_config(args) -> geo.SolverConfig:
    kwargs = {}
    if args.modes is not None:
        kwargs["modes"] = args.modes
    if args.tol is not None:
        kwargs["newton_tol"] = args.tol
    if args.homotopy_steps is not None:
        kwargs["homotopy_steps"] = args.homotopy_steps
    kwargs["seed"] = args.seed
    return geo.SolverConfig(**kwargs)


def _config_record(args, command: str) -> dict:
    rec = {"command": command, "seed": args.seed, "format": args.format,
           "workers": args.workers}
    for key in ("modes", "tol", "homotopy_steps", "domain"):
        val = getattr(args, key, None)
        if val is not None:
            rec[key] = val
    for key in ("z", "w", "v", "p", "z0", "R", "count", "suite", "resolution",
                "samples", "sub"):
        val = getattr(args, key, None)
        if val is not None:
            rec[key] = val
    return rec


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plurikernel",
        description="Complex geodesics, invariant kernels and boundary "
                    "quadrature on smooth strongly convex domains.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", required=True, help="domain spec JSON path")
    common.add_argument("--modes", type=int, default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--homotopy-steps", dest="homotopy_steps", type=int,
                        default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv"), default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    p_dom = sub.add_parser("domain", help="domain utilities")
    dom_sub = p_dom.add_subparsers(dest="sub", required=True)
    p_val = dom_sub.add_parser("validate", parents=[common])
    p_val.add_argument("--samples", type=int, default=1024)

    p_geo = sub.add_parser("geodesic", help="solve a geodesic")
    geo_sub = p_geo.add_subparsers(dest="sub", required=True)
    g_tp = geo_sub.add_parser("two-point", parents=[common])
    g_tp.add_argument("--z", required=True)
    g_tp.add_argument("--w", required=True)
    g_dir = geo_sub.add_parser("direction", parents=[common])
    g_dir.add_argument("--z", required=True)
    g_dir.add_argument("--v", required=True)
    g_chl = geo_sub.add_parser("chl", parents=[common])
    g_chl.add_argument("--p", required=True)
    g_chl.add_argument("--v", required=True)

    p_ker = sub.add_parser("kernel", help="evaluate an invariant kernel")
    ker_sub = p_ker.add_subparsers(dest="sub", required=True)
    k_green = ker_sub.add_parser("green", parents=[common])
    k_green.add_argument("--z0", required=True)
    k_green.add_argument("--z", required=True)
    k_poisson = ker_sub.add_parser("poisson", parents=[common])
    k_poisson.add_argument("--p", required=True)
    k_poisson.add_argument("--z", required=True)
    k_kob = ker_sub.add_parser("kobayashi", parents=[common])
    k_kob.add_argument("--z", required=True)
    k_kob.add_argument("--w", required=True)
    k_met = ker_sub.add_parser("metric", parents=[common])
    k_met.add_argument("--z", required=True)
    k_met.add_argument("--v", required=True)

    p_lvl = sub.add_parser("levelset", parents=[common],
                           help="sample a horosphere boundary")
    p_lvl.add_argument("--p", required=True)
    p_lvl.add_argument("--R", type=float, required=True)
    p_lvl.add_argument("--count", type=int, required=True)

    p_chk = sub.add_parser("check", help="run a verification suite")
    chk_sub = p_chk.add_subparsers(dest="suite", required=True)
    for name in checks.SUITES:
        c = chk_sub.add_parser(name, parents=[common])
        if name == "reproduce":
            c.add_argument("--resolution", type=int, default=None)
    return parser


def _cmd_domain(args) -> int:
    spec = dom.load_domain(args.domain)
    report = dom.validate(spec, samples=args.samples, seed=args.seed)
    _emit_json({"domain": dom.domain_to_dict(spec), "report": report},
               _config_record(args, "domain.validate"))
    return 0 if report["ok"] else 1


def _cmd_geodesic(args) -> int:
    spec = dom.load_domain(args.domain)
    cfg = _solver_config(args)
    if args.sub == "two-point":
        g = geo.solve_two_point(spec, _parse_point(args.z, spec.n),
                                _parse_point(args.w, spec.n), cfg)
    elif args.sub == "direction":
        g = geo.solve_direction(spec, _parse_point(args.z, spec.n),
                                _parse_point(args.v, spec.n), cfg)
    else:
        g = geo.solve_chl(spec, _parse_point(args.p, spec.n),
                          _parse_point(args.v, spec.n), cfg)
    _emit_json(geo.disc_to_dict(g), _config_record(args, f"geodesic.{args.sub}"))
    return 0


def _cmd_kernel(args) -> int:
    spec = dom.load_domain(args.domain)
    cfg = _solver_config(args)
    if args.sub == "green":
        value = kn.green(spec, _parse_point(args.z0, spec.n),
                         _parse_point(args.z, spec.n), cfg)
    elif args.sub == "poisson":
        value = kn.poisson(spec, _parse_point(args.p, spec.n),
                           _parse_point(args.z, spec.n), cfg)
    elif args.sub == "kobayashi":
        value = kn.kobayashi_distance(spec, _parse_point(args.z, spec.n),
                                      _parse_point(args.w, spec.n), cfg)
    else:
        value = kn.kobayashi_metric(spec, _parse_point(args.z, spec.n),
                                    _parse_point(args.v, spec.n), cfg)
    diagnostics = {"method": "closed_form" if spec.is_ball else "solver",
                   "modes": cfg.modes}
    _emit_json({"value": value, "diagnostics": diagnostics},
               _config_record(args, f"kernel.{args.sub}"))
    return 0


def _cmd_levelset(args) -> int:
    spec = dom.load_domain(args.domain)
    if args.R <= 0:
        raise DomainError("horosphere radius must be positive")
    if args.count < 0:
        raise DomainError("count must be nonnegative")
    p = _parse_point(args.p, spec.n)
    config = _config_record(args, "levelset")
    if args.count == 0:
        points = np.zeros((0, spec.n), dtype=complex)
        skipped = 0
    else:
        points, skipped = kn.sample_levelset(spec, p, args.R, args.count,
                                             seed=args.seed)
    if (args.format or "csv") == "json":
        _emit_json({"points": [_jsonable(z) for z in points], "skipped": skipped},
                   config)
        return 0
    header = ",".join(f"{c}{j+1}" for j in range(spec.n) for c in ("re_z", "im_z"))
    sys.stdout.write(f"# version={__version__} config_digest={_digest(config)} "
                     f"skipped={skipped}\n")
    sys.stdout.write(header + "\n")
    for z in points:
        row = []
        for j in range(spec.n):
            row += [repr(float(z[j].real)), repr(float(z[j].imag))]
        sys.stdout.write(",".join(row) + "\n")
    return 0


def _cmd_check(args) -> int:
    spec = dom.load_domain(args.domain)
    cfg = _solver_config(args)
    report = checks.run_suite(args.suite, spec, cfg, seed=args.seed,
                              resolution=getattr(args, "resolution", None),
                              workers=args.workers)
    _emit_json(report, _config_record(args, f"check.{args.suite}"))
    return 0 if report["passed"] else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "domain":
            return _cmd_domain(args)
        if args.command == "geodesic":
            return _cmd_geodesic(args)
        if args.command == "kernel":
            return _cmd_kernel(args)
        if args.command == "levelset":
            return _cmd_levelset(args)
        if args.command == "check":
            return _cmd_check(args)
        parser.error(f"unknown command {args.command}")
        return USAGE_ERROR
    except (SolverError, EvaluationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        if isinstance(exc, SolverError) and exc.report:
            print(json.dumps(_jsonable(exc.report), sort_keys=True), file=sys.stderr)
        return NUMERIC_ERROR
    except (DomainError, OSError, json.JSONDecodeError, PlurikernelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
