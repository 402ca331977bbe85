"""Command-line interface.

    dirichlet-biquad invariants 105
    dirichlet-biquad scan --max 100000 --oracle-max 30000 --out scan.csv
    dirichlet-biquad verify --max 30000 --oracle-max 30000
    dirichlet-biquad density --max 1000000

Exit status: 0 success, 1 verification failure, 2 invalid input.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

from . import __version__
from .arithmetic import factor_odd_squarefree, gaussian_divisors
from .biquadratic import biquad_invariants, check_final_identity
from .config import settings
from .errors import BiquadError
from .experiments import (
    density_report,
    omega3_concentration,
    scan,
    verify_all,
    write_csv,
    write_json,
)
from .forms import FormClassOracle
from .kernels import BACKEND
from .pell import cf_sqrt, hasse_witness, solve_pm2
from .quadratic import hypothesis_ordinary, in_N, quad_invariants


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _groups(g):
    return "trivial" if not g.invariant_factors else " x ".join(f"Z/{d}" for d in g.invariant_factors)


def cmd_invariants(args) -> int:
    fn = factor_odd_squarefree(args.n)
    q = quad_invariants(fn)
    lines = [
        f"n = {fn.n} = {' * '.join(map(str, fn.primes))}",
        f"  omega = {fn.omega}, omega1 = {fn.omega1}, omega3 = {fn.omega3}, "
        f"prime = 5 mod 8 present: {fn.has_p5mod8}",
        f"Q(sqrt(n)):  D = {q.disc_plus}, rk2 Cl+ = {q.rk2_narrow_plus}, "
        f"rk2 Cl = {q.rk2_ordinary_plus}, rk4 Cl+ = {q.rk4_narrow_plus}, index = {q.index_i}",
        f"Q(sqrt(-n)): D = {q.disc_minus}, rk2 = {q.rk2_minus}, rk4 = {q.rk4_minus}",
    ]
    pd = cf_sqrt(fn.n)
    lines.append(f"sqrt(n): period {pd.period}, fundamental unit norm {pd.unit_norm:+d}")
    member = in_N(fn)
    lines.append(f"n in N: {member}")
    if fn.n <= 3:
        print("\n".join(lines))
        return 0
    w = solve_pm2(fn.n)
    if w is not None:
        a, b = hasse_witness(w, fn.n)
        digits = len(str(w.e))
        shown = f"c^2 - n e^2 = {2 * w.sign:+d} with e of {digits} digits" if digits > 30 else (
            f"{w.c}^2 - {fn.n}*{w.e}^2 = {2 * w.sign:+d}"
        )
        lines.append(f"n in E: True ({shown}); unit a + b sqrt(n) of norm 1 verified")
    else:
        lines.append("n in E: False")
    oracle = FormClassOracle(settings.oracle_bound)
    hyp = None
    if oracle.covers(q.disc_plus) and oracle.covers(q.disc_minus):
        hyp = hypothesis_ordinary(fn, oracle)
        gp = oracle.narrow_class_group(q.disc_plus)
        go = oracle.ordinary_class_group(q.disc_plus)
        gm = oracle.narrow_class_group(q.disc_minus)
        lines.append(f"oracle: Cl+(n) = {_groups(gp)}, Cl(n) = {_groups(go)}, Cl(-n) = {_groups(gm)}")
        lines.append(f"both ordinary 4-ranks zero: {hyp}")
    holds = hyp if hyp is not None else member
    b = biquad_invariants(fn, holds, enumerate_F=2 * fn.omega1 + fn.omega3 + 2
                          <= settings.gaussian_divisor_log2_bound)
    lines += [
        f"K_n: rk2 Cl = {b.rk2_K}, F(n) = {b.F_count}, delta = {b.delta}, "
        f"epsilon = {b.epsilon}, Q = {b.Q}",
        f"  rk4 Cl(K_n) = {b.rk4_K if b.rk4_K is not None else 'n/a (hypothesis fails or unchecked)'}"
        f", bounds [{b.bounds[0]}, {b.bounds[1]}]",
    ]
    if member and hyp is not None:
        rep = check_final_identity(fn, go.order, gm.order, True)
        lines.append(f"2-adic class number identity: {rep.lhs} = {rep.rhs} "
                     f"{'pass' if rep.passed else 'FAIL'}")
    print("\n".join(lines))
    return 0


def cmd_scan(args) -> int:
    records = scan(args.max, only_N=args.only_N, oracle_max=args.oracle_max, jobs=args.jobs)
    writer = write_csv if args.format == "csv" else write_json
    if args.out == "-":
        count = writer(records, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            count = writer(records, fh)
    print(f"wrote {count} records to {args.out}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    res = verify_all(args.max, args.oracle_max, jobs=args.jobs)
    for suite, k in res.checked.items():
        bad = sum(1 for f in res.failures if f.suite == suite)
        print(f"{'PASS' if not bad else 'FAIL'} {suite}: {k} checked, {bad} failures")
    if res.failures:
        print(json.dumps([dataclasses.asdict(f) for f in res.failures[:100]], indent=1))
    return res.status


def cmd_density(args) -> int:
    rep = density_report(args.max, epsilon=args.epsilon, jobs=args.jobs)
    out = dataclasses.asdict(rep)
    out["eta_inf_2"] = 0.288788095086602
    out["omega3_outside_fraction"] = omega3_concentration(args.max)
    print(json.dumps(out, indent=1))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dirichlet-biquad",
        description="Class group invariants of Q(sqrt(n), sqrt(-n)) for odd squarefree n.",
    )
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for scans")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="report every invariant of a single n")
    s.add_argument("n", type=_positive_int)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("scan", help="write one record per odd squarefree 3 < n <= max")
    s.add_argument("--max", type=_positive_int, required=True)
    s.add_argument("--only-N", dest="only_N", action="store_true")
    s.add_argument("--oracle-max", type=_positive_int, default=None)
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("verify", help="run every consistency suite")
    s.add_argument("--max", type=_positive_int, required=True)
    s.add_argument("--oracle-max", type=_positive_int, required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("density", help="density statistics up to max")
    s.add_argument("--max", type=_positive_int, required=True)
    s.add_argument("--epsilon", type=_positive_float, default=0.5)
    s.set_defaults(func=cmd_density)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("density",) and args.max < 16:
        print("error: --max must be at least 16 (log log max must be positive)", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BiquadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
