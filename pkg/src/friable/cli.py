"""Command-line front end.

Exit status: 0 success, 1 a ``check`` suite found a non-zero residual,
2 invalid arguments, 3 input outside the supported numeric range.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys

from . import chamayou, constants, counting, dickman as rho_mod, estimates, series
from .errors import RangeRefusal
from .formatting import fmt_number, fmt_tolerance

FORMATS = ("text", "json", "csv")
CHECK_SUITES = ("buchstab", "series", "identity")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="text", dest="output_format")
    parser.add_argument("--output", metavar="PATH", help="write data here instead of stdout")
    parser.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")


def _resolution(parser: argparse.ArgumentParser, default: int = 1024) -> None:
    parser.add_argument("--resolution", type=int, default=default, metavar="N",
                        help=f"solver grid has N nodes per unit of u (default {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="friable",
                                     description="Counting and estimating integers without large prime factors.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("rho", help="evaluate rho(u) or export a table")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--u", type=float)
    group.add_argument("--table", metavar="STEP,UMAX", help="export rho at STEP spacing up to UMAX")
    _resolution(p)
    _common(p)

    p = sub.add_parser("psi", help="exact count Psi(x, y)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--x", type=int)
    group.add_argument("--log10x", type=float, help="log10 of x (lattice method only)")
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--method", choices=("sieve", "lattice"), default=None)
    p.add_argument("--mod", type=int, default=None, metavar="M")
    p.add_argument("--res", type=int, default=None, metavar="L")
    _common(p)

    p = sub.add_parser("estimate", help="all estimates for one (x, y)")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--m", type=int, default=2, choices=(0, 1, 2))
    p.add_argument("--no-exact", action="store_true", help="skip the exact sieve count")
    _resolution(p)
    _common(p)

    p = sub.add_parser("bounds", help="Rankin bounds and classical bounds on rho(u)")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--sigma", type=float, default=None)
    _resolution(p)
    _common(p)

    p = sub.add_parser("lambda", help="Golomb-Dickman constant")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--u-max", type=float, default=30.0)
    _resolution(p)
    _common(p)

    p = sub.add_parser("simulate", help="Chamayou Monte Carlo histogram")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bins", type=int, default=30)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--t-max", type=float, default=3.0)
    p.add_argument("--eps", type=float, default=1e-6)
    _resolution(p)
    _common(p)

    p = sub.add_parser("check", help="cross-oracle residual suites")
    p.add_argument("suites", nargs="*", metavar="{buchstab,series,identity}",
                   help="suites to run (default: all)")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    _resolution(p)
    _common(p)
    return parser


def _table(args, u_max: float):
    if args.resolution < 64:
        raise ValueError("--resolution must be at least 64")
    return rho_mod.build_rho_table(1.0 / args.resolution, max(2.0, u_max))


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _records(args, rows: list[dict], text_fn=None) -> str:
    if args.output_format == "json":
        return json.dumps(rows[0] if len(rows) == 1 else rows) + "\n"
    keys = list(rows[0])
    if args.output_format == "csv":
        lines = [",".join(keys)] + [",".join(fmt_number(r[k]) for k in keys) for r in rows]
        return "\n".join(lines) + "\n"
    if text_fn is not None:
        return text_fn(rows)
    return "\n".join(" ".join(fmt_number(r[k]) for k in keys) for r in rows) + "\n"


def cmd_rho(args) -> str:
    if args.u is not None:
        table = _table(args, max(4.0, math.ceil(args.u)))
        value = rho_mod.rho(table, args.u)
        return _records(args, [{"u": args.u, "value": value}],
                        lambda rows: fmt_number(rows[0]["value"]) + "\n")
    try:
        step_text, umax_text = args.table.split(",")
        step, u_max = float(step_text), float(umax_text)
    except ValueError:
        raise ValueError("--table expects STEP,UMAX") from None
    table = _table(args, u_max)
    if args.output_format == "text":
        return rho_mod.export_table(table, step, u_max)
    count = int(math.floor(u_max / step + 1e-9))
    rows = []
    for k in range(count + 1):
        u = round(k * step, 10)
        rows.append({"u": u, "value": rho_mod.rho(table, u)})
    return _records(args, rows)


def cmd_psi(args) -> str:
    method = args.method or ("lattice" if args.log10x is not None else "sieve")
    if args.mod is not None or args.res is not None:
        if args.x is None or args.mod is None or args.res is None:
            raise ValueError("--mod and --res go together and need --x")
        count = counting.psi_congruence(args.x, args.y, args.mod, args.res, workers=args.threads)
        return _records(args, [{"x": args.x, "y": args.y, "m": args.mod, "l": args.res,
                                "count": count}])
    if method == "lattice":
        log_x = args.log10x * math.log(10) if args.log10x is not None else math.log(args.x)
        result = counting.psi_lattice(log_x, args.y)
    else:
        if args.x is None:
            raise ValueError("the sieve needs --x")
        result = counting.psi_sieve(args.x, args.y, workers=args.threads)
    record = result.as_record()
    if args.x is not None:
        record["x"] = args.x
    elif args.log10x < 308:
        record["x"] = 10.0 ** args.log10x
    if args.output_format == "text":
        return f"{fmt_number(record['x'])} {result.y} {result.count}\n"
    return _records(args, [record])


def cmd_estimate(args) -> str:
    u = math.log(args.x) / math.log(args.y) if args.x > 1 and args.y > 1 else 2.0
    table = _table(args, max(4.0, math.ceil(u) + 1))
    report = estimates.estimate_report(args.x, args.y, table, m=args.m,
                                       exact=False if args.no_exact else None)
    if args.output_format == "json":
        return report.to_json() + "\n"
    if args.output_format == "csv":
        row = report.as_dict()
        debruijn = row.pop("debruijn")
        flags = row.pop("debruijn_in_range")
        for m, v in enumerate(debruijn):
            row[f"debruijn_{m}"] = v
            row[f"debruijn_{m}_in_range"] = flags[m]
        return _records(args, [row])
    return report.to_text()


def cmd_bounds(args) -> str:
    x, y = args.x, args.y
    row = {"x": x, "y": y}
    sigma = estimates.default_sigma(y) if args.sigma is None else args.sigma
    row["sigma"] = sigma
    row["zeta_partial"] = estimates.zeta_partial(sigma, y).value
    row["rankin"] = estimates.rankin_bound(x, y, sigma)
    row["sigma_optimized"], row["rankin_optimized"] = estimates.rankin_optimize(x, y)
    u = math.log(x) / math.log(y)
    row["u"] = u
    table = _table(args, max(4.0, math.ceil(u) + 1))
    row["rho"] = rho_mod.rho(table, u)
    kinds = rho_mod.BoundKind
    row["factorial_upper"] = rho_mod.classical_bound(kinds.FactorialUpper, u)
    row["ramaswami_lower_c1"] = rho_mod.classical_bound(kinds.RamaswamiLower, u) if u >= 1 else None
    row["buchstab_lower"] = rho_mod.classical_bound(kinds.BuchstabLower, u) if u >= 6 else None
    row["debruijn_asymptotic"] = rho_mod.debruijn_asymptotic(u) if u > math.e else None
    if args.output_format == "text":
        width = max(map(len, row))
        return "".join(f"{k:<{width}}  {fmt_number(v)}\n" for k, v in row.items() if v is not None)
    return _records(args, [row])


def cmd_lambda(args) -> str:
    table = _table(args, args.u_max)
    result = constants.golomb_dickman(table, args.tol)
    if args.output_format == "text":
        digits = max(1, math.ceil(-math.log10(args.tol)))
        return f"{result.value:.{digits}f} ± {fmt_tolerance(args.tol)}\n"
    return _records(args, [{"value": result.value, "abs_error_bound": result.abs_error_bound,
                            "tail_bound": result.tail_bound, "panels": result.panels,
                            "tol": args.tol}])


def cmd_simulate(args) -> str:
    hist = chamayou.chamayou_histogram(args.n, args.bins, args.t_max, args.seed, args.eps,
                                       workers=args.threads)
    table = _table(args, max(4.0, args.t_max + 1))
    if args.output_format == "json":
        p = chamayou.expected_masses(hist, table)
        stat, dof, pval = chamayou.chi_square(hist, table)
        return json.dumps({
            "bin_edges": hist.bin_edges.tolist(), "counts": hist.counts.tolist(),
            "n_samples": hist.n_samples, "truncation_eps": hist.truncation_eps,
            "expected": (hist.n_samples * p).tolist(),
            "chi_square": stat, "dof": dof, "p_value": pval,
        }) + "\n"
    return chamayou.histogram_csv(hist, table)


def cmd_check(args) -> tuple[str, bool]:
    unknown = set(args.suites) - set(CHECK_SUITES)
    if unknown:
        raise ValueError(f"unknown check suite(s): {', '.join(sorted(unknown))}")
    suites = args.suites or list(CHECK_SUITES)
    rng = random.Random(args.seed)
    lines = []
    ok = True
    if "buchstab" in suites:
        for _ in range(args.trials):
            x = rng.randint(10, 10**5)
            y = rng.randint(1, x - 1)
            z = rng.randint(y + 1, x)
            r = counting.buchstab_check(x, y, z)
            ok &= r == 0
            lines.append(("buchstab", f"x={x} y={y} z={z}", r))
    if "series" in suites:
        table = _table(args, 5.0)
        for i in range(args.trials):
            u = round(1.0 + 3.0 * rng.random(), 6)
            a = series.rho_via_ramanujan(u, 1e-8)
            b = series.rho_via_buchstab(u, 1e-8)
            c = rho_mod.rho(table, u)
            r = max(abs(a - b), abs(a - c))
            ok &= abs(a - b) < 1e-6 and abs(a - c) < 1e-5
            lines.append(("series", f"u={u}", r))
    if "identity" in suites:
        table = _table(args, 10.0)
        for _ in range(args.trials):
            log_x = rng.uniform(14.0, 60.0)
            u = rng.uniform(2.05, min(8.0, math.sqrt(log_x)) - 0.01)
            x, y = math.exp(log_x), math.exp(log_x / u)
            a = estimates.debruijn_expansion(x, y, 1, table)
            b = estimates.ramaswami_estimate(x, y, table)
            r = abs(a - b) / abs(b)
            ok &= r < 1e-12
            lines.append(("identity", f"x={fmt_number(x, 6)} y={fmt_number(y, 6)}", r))
    rows = [{"suite": s, "case": c, "residual": r} for s, c, r in lines]
    if args.output_format == "text":
        text = "".join(f"{s:<9} {c:<32} {fmt_number(r)}\n" for s, c, r in lines)
        text += "all residuals within tolerance\n" if ok else "residual check FAILED\n"
        return text, ok
    return _records(args, rows), ok


COMMANDS = {
    "rho": cmd_rho, "psi": cmd_psi, "estimate": cmd_estimate, "bounds": cmd_bounds,
    "lambda": cmd_lambda, "simulate": cmd_simulate, "check": cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("friable: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        out = COMMANDS[args.subcommand](args)
    except RangeRefusal as exc:
        print(f"friable: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OverflowError) as exc:
        print(f"friable: {exc}", file=sys.stderr)
        return 2
    ok = True
    if isinstance(out, tuple):
        out, ok = out
    _emit(args, out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
