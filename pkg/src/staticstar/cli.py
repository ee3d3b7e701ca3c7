"""Command-line interface.

Exit codes: 0 success; 1 usage or bad parameters; 2 a verification gate
failed (residuals above tolerance, failed build checks); 3 a mathematical or
integration failure (horizon hit, no surface, no level set, step failure,
domain errors); 4 I/O failure.

Examples
--------
::

    staticstar tov --eos constant:c=0.001 --rho-c 0.0005 --out star.csv
    staticstar catalog list
    staticstar catalog verify witten_stellar --n 3
    staticstar verify wyman:R=2,M=0.2 --json
    staticstar mass --model schwarzschild_exterior:M=1 --level 0.5 --json
    staticstar audit --eos chaplygin:c=1 --rho-c -0.5
    staticstar build --phi witten --n 3 --span 0,10
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import catalog, conformal, energy, quasilocal, tov
from .config import RunConfig, load_config, merge_config
from .errors import BadParams, NoLevelSet, StaticStarError, UnknownModel

__all__ = ["main"]


def _fmt(x) -> str:
    return repr(float(x))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise BadParams(f"{what} must be two comma-separated numbers, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise BadParams(f"{what} must be numeric, got {text!r}") from exc


# ----------------------------------------------------------------------------
# model sources shared by mass/audit
# ----------------------------------------------------------------------------

def _tov_model(args, cfg: RunConfig) -> tov.StellarModel:
    eos = tov.EquationOfState.from_spec(args.eos)
    opts = tov.SolverOptions(
        abs_tol=cfg.abs_tol,
        rel_tol=cfg.rel_tol,
        grid_n=cfg.grid_n,
        surface_ytol_scale=cfg.surface_tol_scale,
    )
    profile = tov.integrate_tov(eos, args.rho_c, opts)
    r_b = tov.detect_surface(profile)
    return tov.match_exterior(profile, r_b)


def _resolve_model(args, cfg: RunConfig):
    if getattr(args, "model", None):
        return catalog.parse_model_spec(args.model)
    if getattr(args, "eos", None):
        if getattr(args, "rho_c", None) is None:
            raise BadParams("--eos also needs --rho-c")
        return _tov_model(args, cfg)
    raise BadParams("give a model with --model ID[:k=v,...] or --eos/--rho-c")


# ----------------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------------

def _cmd_tov(args, cfg: RunConfig) -> int:
    model = _tov_model(args, cfg)
    prof = model.profile
    if args.out:
        model.to_csv(args.out)
    payload = {
        "eos": args.eos,
        "rho_center": args.rho_c,
        "r_b": model.r_b,
        "mass": model.mass,
        "f_center": float(model.f(prof.r_start)),
        "samples": int(prof.samples.shape[0]),
        "negative_density_seen": prof.negative_density_seen,
        "out": args.out,
    }
    if args.json:
        print(_dump(payload))
    else:
        print(f"surface radius r_b = {_fmt(model.r_b)}")
        print(f"total mass       M = {_fmt(model.mass)}")
        print(f"central lapse    f = {_fmt(payload['f_center'])}")
        if args.out:
            print(f"profile written to {args.out}")
    return 0


def _cmd_catalog(args, cfg: RunConfig) -> int:
    if args.action == "list":
        ids = sorted(catalog.MODELS)
        if args.json:
            print(_dump({"models": ids}))
        else:
            for mid in ids:
                print(mid)
        return 0
    # action == "verify"
    if not args.catalog_model:
        raise BadParams("catalog verify needs a model id")
    params = {}
    if args.n is not None:
        params["n"] = args.n
    for kv in args.param or ():
        if "=" not in kv:
            raise BadParams(f"--param expects key=value, got {kv!r}")
        key, val = kv.split("=", 1)
        params[key] = float(val)
    model = catalog.build(args.catalog_model, **params)
    return _print_verify(model, args, cfg)


def _print_verify(model, args, cfg: RunConfig) -> int:
    result = model.verify(grid_n=cfg.grid_n)
    if args.json:
        print(_dump(result.to_json_dict()))
    else:
        print(f"model {result.model_id}: {'PASS' if result.passed else 'FAIL'}")
        for name, rep in result.reports.items():
            status = "ok  " if rep.passed else "FAIL"
            print(f"  {status} {name}  worst={rep.worst:.3e}  tol={rep.tol:g}")
        for where, val in result.junction.items():
            print(f"  junction {where}: {val:.3e}")
        for note in result.notes:
            print(f"  note: {note}")
    return 0 if result.passed else 2


def _cmd_verify(args, cfg: RunConfig) -> int:
    model = catalog.parse_model_spec(args.model)
    return _print_verify(model, args, cfg)


def _cmd_mass(args, cfg: RunConfig) -> int:
    model = _resolve_model(args, cfg)
    levels = [float(c) for c in args.level]
    window = _parse_pair(args.window, "--window") if args.window else None

    def one(c: float):
        try:
            return quasilocal.level_set_data(
                model, c, window=window, grid_n=max(cfg.grid_n, 256),
                degree=cfg.quad_degree,
            )
        except NoLevelSet:
            return []

    with ThreadPoolExecutor(max_workers=min(8, len(levels))) as pool:
        per_level = list(pool.map(one, levels))

    reports = [rep for found in per_level for rep in found]
    if not reports:
        raise NoLevelSet(f"no level sets found for levels {levels}")
    if args.out:
        quasilocal.write_sweep_csv(reports, args.out)
    if args.json:
        print(_dump([rep.to_json_dict() for rep in reports]))
    else:
        for rep in reports:
            print(
                f"c={_fmt(rep.level)} r={_fmt(rep.r)} "
                f"m_hawking={_fmt(rep.m_hawking)} m_brown_york={_fmt(rep.m_brown_york)} "
                f"class={rep.classification.value}"
            )
        if args.out:
            print(f"sweep written to {args.out}")
    return 0


def _cmd_audit(args, cfg: RunConfig) -> int:
    model = _resolve_model(args, cfg)
    scan = energy.scan_model(model, n=cfg.grid_n)
    if args.json:
        print(_dump(scan.to_json_dict()))
    else:
        for name in ("wec", "nec", "dec"):
            print(f"{name.upper()}: {'satisfied' if getattr(scan, name) else 'violated'}")
        if scan.first_violation is not None:
            name, r = scan.first_violation
            print(f"first violation: {name.upper()} at r = {_fmt(r)}")
    return 0


def _cmd_build(args, cfg: RunConfig) -> int:
    ic = _parse_pair(args.ic, "--ic") if args.ic else None
    span = _parse_pair(args.span, "--span") if args.span else (0.0, 10.0)
    invariant = None
    if args.n != 3:
        invariant = conformal.BasicInvariant(1.0, (0.0,) * args.n, (0.0,) * args.n)
    model = conformal.build_model(
        args.phi, n=args.n, ic=ic, invariant=invariant, lam=cfg.lam, span=span,
    )
    if args.json:
        payload = {
            "label": model.label,
            "n": model.n,
            "lam": model.lam,
            "domain": list(model.domain),
            "truncated": model.truncated,
            "degenerate": model.degenerate,
            "passed": model.passed,
            "checks": {name: rep.to_json_dict() for name, rep in model.checks.items()},
        }
        print(_dump(payload))
    else:
        print(f"conformal model {model.label!r} on u in [{_fmt(model.domain[0])}, "
              f"{_fmt(model.domain[1])}]: {'PASS' if model.passed else 'FAIL'}")
        for name, rep in model.checks.items():
            status = "ok  " if rep.passed else "FAIL"
            print(f"  {status} {name}  worst={rep.worst:.3e}  tol={rep.tol:g}")
        if model.truncated:
            print("  note: lapse lost positivity; domain truncated")
    return 0 if model.passed else 2


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file ([staticstar] key = value)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="output file path")
    common.add_argument("--abs-tol", type=float, default=None, dest="abs_tol")
    common.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
    common.add_argument("--grid-n", type=int, default=None, dest="grid_n")
    common.add_argument("--quad-degree", type=int, default=None, dest="quad_degree")
    common.add_argument("--surface-tol-scale", type=float, default=None,
                        dest="surface_tol_scale")
    common.add_argument("--lam", type=float, default=None,
                        help="cosmological constant (builders that accept one)")

    parser = argparse.ArgumentParser(
        prog="staticstar",
        description="Static perfect-fluid stellar models: integration, "
                    "exact-solution checks, quasi-local masses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tov", parents=[common],
                       help="integrate an interior model from an equation of state")
    p.add_argument("--eos", required=True,
                   help="constant:c=..., chaplygin:c=..., or table:path.csv")
    p.add_argument("--rho-c", type=float, required=True, dest="rho_c",
                   help="central pressure value")
    p.set_defaults(handler=_cmd_tov)

    p = sub.add_parser("catalog", parents=[common], help="exact-solution catalog")
    p.add_argument("action", choices=("list", "verify"))
    p.add_argument("catalog_model", nargs="?", help="model id (for verify)")
    p.add_argument("--n", type=int, default=None, help="dimension parameter")
    p.add_argument("--param", action="append", help="extra key=value model parameter")
    p.set_defaults(handler=_cmd_catalog)

    p = sub.add_parser("verify", parents=[common],
                       help="verify a catalog model given as id[:k=v,...]")
    p.add_argument("model")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("mass", parents=[common],
                       help="quasi-local masses on lapse level sets")
    p.add_argument("--model", help="catalog model spec id[:k=v,...]")
    p.add_argument("--eos", help="equation of state (integrated star source)")
    p.add_argument("--rho-c", type=float, dest="rho_c", default=None)
    p.add_argument("--level", action="append", required=True, type=float,
                   help="lapse level c (repeatable)")
    p.add_argument("--window", help="scan window lo,hi in the radial variable")
    p.set_defaults(handler=_cmd_mass)

    p = sub.add_parser("audit", parents=[common],
                       help="energy-condition scan (WEC / NEC / DEC)")
    p.add_argument("--model", help="catalog model spec id[:k=v,...]")
    p.add_argument("--eos", help="equation of state (integrated star source)")
    p.add_argument("--rho-c", type=float, dest="rho_c", default=None)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("build", parents=[common],
                       help="build and validate a conformally flat model")
    p.add_argument("--phi", default="witten",
                   help="'witten', 'unit' (closed-form presets)")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--ic", help="initial lapse data f,f' at span start")
    p.add_argument("--span", help="invariant span lo,hi (default 0,10)")
    p.set_defaults(handler=_cmd_build)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        file_overrides = load_config(args.config) if args.config else None
        cfg = merge_config(
            file_overrides,
            {
                "abs_tol": args.abs_tol,
                "rel_tol": args.rel_tol,
                "grid_n": args.grid_n,
                "quad_degree": args.quad_degree,
                "surface_tol_scale": args.surface_tol_scale,
                "lam": args.lam,
            },
        )
        return args.handler(args, cfg)
    except (BadParams, UnknownModel) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except StaticStarError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
