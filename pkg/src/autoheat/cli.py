"""Command-line surface: evaluation, verification suites, profile data, ingestion.

Exit codes: 0 success, 1 runtime error, 2 success with a tail warning,
64 usage error.  Output is deterministic for fixed config and data: fixed
summation orders inside the library and %.12e float formatting here.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import build_config
from .forms import MaassDataError, load_maass_data
from .heat import heat_coefficients, initial_condition_gap
from .hyperbolic import HPoint
from .sobolev import sobolev_norm
from .synthesis import evaluate_heat_kernel
from .verify import SUITES, grid_for_config, run_suite

USAGE_EXIT = 64
DEFAULT_PROFILE_INDICES = (0, 4, 8)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(USAGE_EXIT)


def _fmt(x: float) -> str:
    return "%.12e" % float(x)


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="key=value configuration file")
    p.add_argument("--r-max", type=float, default=None, dest="r_max")
    p.add_argument("--panels", type=int, default=None)
    p.add_argument("--nodes-per-panel", type=int, default=None, dest="nodes_per_panel")
    p.add_argument("--norm-bound", type=float, default=None, dest="oracle_norm_bound")
    p.add_argument("--data", default=None, dest="maass_data_path",
                   help="Maass data file (default: $AUTOHEAT_DATA or packaged)")
    p.add_argument("--format", default=None, dest="output_format", choices=("csv", "json"))


def _config_from(args) -> "RunConfig":
    keys = ("r_max", "panels", "nodes_per_panel", "oracle_norm_bound",
            "maass_data_path", "output_format")
    overrides = {k: getattr(args, k, None) for k in keys}
    return build_config(args.config, **overrides)


def make_parser() -> _Parser:
    parser = _Parser(prog="autoheat",
                     description="heat kernel on the modular surface: evaluate and verify")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate the heat kernel at one point")
    p_eval.add_argument("--t", type=float, required=True)
    p_eval.add_argument("--x", type=float, required=True)
    p_eval.add_argument("--y", type=float, required=True)
    _common_flags(p_eval)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite_pos", nargs="?", default=None, metavar="suite",
                          help=f"one of: {', '.join(SUITES)}")
    p_verify.add_argument("--suite", default=None, dest="suite_flag")
    _common_flags(p_verify)

    p_profile = sub.add_parser("profile",
                               help="initial-condition gap and norms along a time list")
    p_profile.add_argument("--t-list", required=True, dest="t_list",
                           help="comma-separated strictly monotone times, e.g. 1,0.5,0.1")
    p_profile.add_argument("--s-list", default=None, dest="s_list",
                           help="comma-separated Sobolev indices (default 0,4,8)")
    _common_flags(p_profile)

    p_ingest = sub.add_parser("ingest-check", help="parse and validate a Maass data file")
    _common_flags(p_ingest)
    return parser


def cmd_eval(args) -> int:
    cfg = _config_from(args)
    if not args.t > 0.0:
        print("error: pointwise evaluation requires t > 0", file=sys.stderr)
        return 1
    if not args.y > 0.0:
        print("error: upper half-plane requires y > 0", file=sys.stderr)
        return USAGE_EXIT
    grid = grid_for_config(cfg)
    rep = evaluate_heat_kernel(args.t, HPoint(args.x, args.y), grid)
    fields = [
        ("t", args.t), ("x", args.x), ("y", args.y),
        ("value", rep.value.real),
        ("cusp_part", rep.cusp_part.real),
        ("residual_part", rep.residual_part.real),
        ("eisenstein_part", rep.eisenstein_part.real),
        ("tail_estimate", rep.tail_estimate),
    ]
    if cfg.output_format == "json":
        print(json.dumps({k: float(_fmt(v)) for k, v in fields}, sort_keys=False))
    else:
        print(",".join(k for k, _ in fields))
        print(",".join(_fmt(v) for _, v in fields))
    return 2 if rep.tail_warning else 0


def cmd_verify(args) -> int:
    if args.suite_pos and args.suite_flag and args.suite_pos != args.suite_flag:
        print("error: conflicting suite names given", file=sys.stderr)
        return USAGE_EXIT
    suite = args.suite_flag or args.suite_pos or "all"
    if suite not in SUITES:
        print(f"error: unknown suite '{suite}' (choose from {', '.join(SUITES)})",
              file=sys.stderr)
        return USAGE_EXIT
    cfg = _config_from(args)
    checks = run_suite(suite, cfg)
    print(f"{'check':44s} {'measured':>14s} {'bound':>12s} status")
    for c in checks:
        print(c.row())
    n_fail = sum(not c.passed for c in checks)
    print(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return 0 if n_fail == 0 else 1


def cmd_profile(args) -> int:
    cfg = _config_from(args)
    try:
        ts = [float(tok) for tok in args.t_list.split(",") if tok.strip()]
    except ValueError:
        print("error: --t-list must be comma-separated numbers", file=sys.stderr)
        return USAGE_EXIT
    if not ts:
        print("error: empty --t-list", file=sys.stderr)
        return USAGE_EXIT
    if any(t <= 0.0 for t in ts):
        print("error: profile times must be positive", file=sys.stderr)
        return USAGE_EXIT
    diffs = [b - a for a, b in zip(ts, ts[1:])]
    if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
        print("error: --t-list must be strictly monotone", file=sys.stderr)
        return USAGE_EXIT
    if args.s_list is None:
        s_list = list(DEFAULT_PROFILE_INDICES)
    else:
        try:
            s_list = [int(tok) for tok in args.s_list.split(",") if tok.strip()]
        except ValueError:
            print("error: --s-list must be comma-separated integers", file=sys.stderr)
            return USAGE_EXIT
        if not s_list:
            print("error: empty --s-list", file=sys.stderr)
            return USAGE_EXIT
    grid = grid_for_config(cfg)
    header = ["t", "gap"] + [f"s{s}" for s in s_list]
    rows = []
    for t in ts:
        coeffs = heat_coefficients(t, grid).coeffs
        row = [t, initial_condition_gap(t, grid)]
        row.extend(sobolev_norm(coeffs, s) for s in s_list)
        rows.append(row)
    if cfg.output_format == "json":
        print(json.dumps([
            {k: float(_fmt(v)) for k, v in zip(header, row)} for row in rows
        ]))
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(_fmt(v) for v in row))
    return 0


def cmd_ingest_check(args) -> int:
    cfg = _config_from(args)
    path = cfg.resolve_data_path()
    try:
        data = load_maass_data(path)
    except (MaassDataError, OSError, ValueError) as exc:
        print(f"ingest-check FAILED for {path}: {exc}", file=sys.stderr)
        return 1
    print(f"ingest-check ok: {len(data)} forms from {path}")
    print(f"{'r':>18s} {'parity':>7s} {'n_coeffs':>9s} {'norm_const':>14s}")
    for f in data:
        print(f"{f.r:18.13f} {f.parity.value:>7s} {f.n_coeffs:9d} "
              f"{f.norm_constant:14.6e}")
    return 0


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    handlers = {
        "eval": cmd_eval,
        "verify": cmd_verify,
        "profile": cmd_profile,
        "ingest-check": cmd_ingest_check,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
