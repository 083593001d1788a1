"""``smimc`` command line front end.

Exit codes
----------
0   success
1   bench finished but some structural indices were not recovered
2   ParseError (bad file, bad flag value, usage error)
3   InsufficientSeriesOrder
4   MaxOrderExceeded (also RankDecrease / NormalRankExceeded)
5   EvalAtPole
6   DegenerateDraw
7   MismatchedShapes
8   verify: a check failed
9   oracle on an identically zero input
10  any other smimc error
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import harness, io
from .exceptions import MismatchedShapes, ParseError, SmithFormError
from .polymat import frob_norm, reexpand
from .smithform import certificates, decompose, residual_report
from .toeplitz_oracle import oracle_profile

EXIT_BENCH_MISMATCH = 1
EXIT_VERIFY_FAILED = 8
TOL_ENV = "SMIMC_TOL"


def _tol_from(args):
    if args.tol is not None:
        return args.tol
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError as exc:
            raise ParseError(f"{TOL_ENV}={env!r} is not a number") from exc
    return None


def _normal_rank(text):
    if text == "auto":
        return "auto"
    try:
        r = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected 'auto' or a positive integer") from exc
    if r < 0:
        raise argparse.ArgumentTypeError("normal rank must be nonnegative")
    return r


def _complex_arg(text):
    try:
        return io.parse_complex(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected comma separated integers") from exc


def _fmt_list(values):
    return " ".join(str(v) for v in values)


def _load_input(args):
    M = io.read_series(args.input)
    if args.point is not None and complex(args.point) != M.point:
        if not (M.exact and M.lowest >= 0):
            raise ParseError("--point differs from the series point and the series is not an exact polynomial")
    return M


# -- subcommands ------------------------------------------------------------
def cmd_analyze(args, out):
    M = _load_input(args)
    D = decompose(
        M,
        point=args.point,
        normal_rank=args.normal_rank,
        tol_rel=_tol_from(args),
        tol_abs=args.tol_abs,
        max_order=args.max_order,
        scale=args.scale,
        seed=args.seed,
    )
    if args.output:
        io.write_decomposition(D, args.output, include_full_N=args.emit_full_n)
    lines = [
        f"point: {io.format_complex(D.point)}",
        f"normal rank: {D.normal_rank}",
        f"sigma: {_fmt_list(D.indices)}",
        "e: " + " ".join(f"{s}:{c}" for s, c in D.multiplicities.items()),
        f"rho: {_fmt_list(D.rho)}",
        f"d': {D.stop_order}",
        f"res_rel: {D.diagnostics['res_rel']:.4e}",
        f"norm_N: {D.diagnostics['norm_N']:.4e}",
    ]
    out.write("\n".join(line.rstrip() for line in lines) + "\n")
    return 0


def cmd_oracle(args, out):
    M = _load_input(args)
    if args.point is not None and complex(args.point) != M.point:
        M = reexpand(M, args.point)
    r = None if args.normal_rank == "auto" else args.normal_rank
    prof = oracle_profile(M, r, tol_rel=_tol_from(args), tol_abs=args.tol_abs, max_order=args.max_order)
    lines = [f"{'k':>4} {'r_k':>6} {'rho_k':>6} {'e_k':>5}"]
    for t, (rk, rho, e) in enumerate(zip(prof.ranks, prof.increments, prof.multiplicities)):
        lines.append(f"{prof.lowest + t:>4} {rk:>6} {rho:>6} {e:>5}")
    lines.append(f"normal rank: {prof.normal_rank}")
    lines.append(f"sigma: {_fmt_list(prof.indices)}")
    lines.append(f"d': {prof.stop_order}")
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_verify(args, out):
    M = io.read_series(args.input)
    D = io.read_decomposition(args.decomp)
    if tuple(D.shape) != tuple(M.shape):
        raise MismatchedShapes(f"series is {M.shape}, decomposition is for {tuple(D.shape)}")
    if D.point != M.point:
        raise MismatchedShapes(f"series point {M.point} differs from decomposition point {D.point}")
    checks = []
    r = D.normal_rank
    sorted_ok = list(D.indices) == sorted(D.indices)
    checks.append(("sigma sorted", sorted_ok, _fmt_list(D.indices)))
    checks.append(("sigma length == r", len(D.indices) == r, f"{len(D.indices)} vs {r}"))
    if r:
        if D.Nr.shape != (M.cols, r) or D.Mr_hat.shape != (M.rows, r):
            raise MismatchedShapes("factor shapes do not match the series and normal rank")
        base = M.with_lowest(min(M.lowest, 0))
        rep = residual_report(base, D)
        checks.append(("res_rel", rep["res_rel"] <= args.max_res, f"{rep['res_rel']:.3e} <= {args.max_res:.1e}"))
        cert = certificates(M, D, seed=args.seed)
        checks.append(
            ("rank Mr_hat(point) == r", cert["rank_Mr_hat_at_point"] == r, f"{cert['rank_Mr_hat_at_point']} vs {r}")
        )
        if D.N_full is not None:
            checks.append(("rank N(point) == n", cert["rank_N_at_point"] == cert["n"], f"{cert['rank_N_at_point']}"))
            checks.append(
                ("det N spread", cert["det_spread"] <= args.max_spread, f"{cert['det_spread']:.3e} <= {args.max_spread:.1e}")
            )
    else:
        checks.append(("zero input", frob_norm(M) == 0.0, f"||P|| = {frob_norm(M):.3e}"))
    width = max(len(name) for name, _, _ in checks)
    for name, ok, detail in checks:
        out.write(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}\n")
    passed = all(ok for _, ok, _ in checks)
    out.write("verify: " + ("pass" if passed else "FAIL") + "\n")
    return 0 if passed else EXIT_VERIFY_FAILED


def cmd_gen(args, out):
    spec = harness.InstanceSpec(
        args.m,
        args.n,
        args.exponents,
        degree=args.degree,
        power=args.power,
        seed=args.seed,
        complex=args.complex,
        identity_transforms=args.identity,
        point=args.point or 0j,
    )
    P, truth = harness.gen_instance(spec)
    if args.pole:
        P = P.shift_power(-args.pole)
        truth = tuple(e - args.pole for e in truth)
    io.write_series(P, args.output)
    out.write(f"wrote {args.output}: {P.rows}x{P.cols}, exponents {P.lowest}..{P.highest}\n")
    out.write(f"planted sigma: {_fmt_list(truth)}\n")
    return 0


def cmd_bench(args, out):
    run = harness.run_table1 if args.table == "table1" else harness.run_table2
    rows = run(seed=args.seed, jobs=args.jobs, complex=args.complex)
    text = harness.format_table(rows, "i" if args.table == "table1" else "k")
    if args.json:
        payload = {"table": args.table, "seed": args.seed, "settings": harness.BENCH_SETTINGS,
                   "rows": [row.as_dict() for row in rows]}
        Path(args.json).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    if args.text:
        Path(args.text).write_text(text + "\n", encoding="utf-8")
    out.write(text + "\n")
    return 0 if all(row.indices_ok for row in rows) else EXIT_BENCH_MISMATCH


# -- parser -----------------------------------------------------------------
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _add_analysis_flags(p):
    p.add_argument("input", help="series file (JSON)")
    p.add_argument("--point", type=_complex_arg, default=None, help="expansion point, e.g. 0, 1+2i")
    p.add_argument("--tol", type=float, default=None, help=f"relative rank tolerance (env {TOL_ENV})")
    p.add_argument("--tol-abs", type=float, default=0.0)
    p.add_argument("--normal-rank", type=_normal_rank, default="auto")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="seed for normal rank sampling")


def build_parser():
    parser = _Parser(prog="smimc", description="Compact local Smith-McMillan form at a point.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="compute the compact local decomposition")
    _add_analysis_flags(p)
    p.add_argument("--scale", choices=("local", "global", "trailing"), default="global")
    p.add_argument("--emit-full-n", action="store_true", help="store the full unimodular factor")
    p.add_argument("--output", "-o", default=None, help="decomposition file to write")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("oracle", help="indices from explicit block Toeplitz ranks")
    _add_analysis_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a decomposition file against its series")
    p.add_argument("--input", required=True)
    p.add_argument("--decomp", required=True)
    p.add_argument("--max-res", type=float, default=1e-10)
    p.add_argument("--max-spread", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a random instance with planted indices")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exponents", type=_int_list, required=True, help="e.g. 0,1,3")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--complex", action="store_true")
    p.add_argument("--identity", action="store_true", help="use M = N = I")
    p.add_argument("--pole", type=int, default=0, help="divide by (lam - point)**pole")
    p.add_argument("--point", type=_complex_arg, default=None)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="reproduce the benchmark tables")
    p.add_argument("table", choices=("table1", "table2"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--complex", action="store_true")
    p.add_argument("--json", default=None, help="machine readable report")
    p.add_argument("--text", default=None, help="aligned text report")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except SmithFormError as exc:
        err.write(f"error[{type(exc).__name__}]: {exc}\n")
        return exc.exit_code
    except (OSError, ValueError) as exc:
        # unreadable files and invalid argument combinations
        err.write(f"error[ParseError]: {exc}\n")
        return ParseError.exit_code


if __name__ == "__main__":
    sys.exit(main())
