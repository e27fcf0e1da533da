"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 the given
closure is not a string link.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .braid import parse_braid
from .errors import BraidInputError, NotStringLink, StrandwalkError
from .exterior import brt_all
from .randomwalk import (
    ClosurePresentation,
    ltw,
    ltw_exterior,
    truncated_series_gaps,
    truncated_series_oracle,
)
from .rmatrix import functor_value, weight_basis
from .verify import EXAMPLE_S, run_suite, verify_presentation
from . import report as report_mod

OK, FAILED, INPUT_ERROR, NOT_STRING_LINK = 0, 1, 2, 3


def build_parser():
    p = argparse.ArgumentParser(
        prog="strandwalk",
        description="Exact random-walk and R-matrix invariants of string links.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_presentation_flags(sp):
        sp.add_argument("--strands", "-n", type=int, help="retained strands n")
        sp.add_argument("--close", "-m", type=int, default=0, help="closed strands m")
        sp.add_argument(
            "--braid",
            default="",
            help="braid word on n+m strands, e.g. '2 -1 2' (empty = identity)",
        )
        sp.add_argument(
            "--example-s",
            action="store_true",
            help="use the pinned two-strand example presentation",
        )

    c = sub.add_parser("compute", help="print an invariant of one presentation")
    add_presentation_flags(c)
    c.add_argument(
        "--invariant",
        choices=["ltw", "ltw-exterior", "ohtsuki", "brt"],
        default="ltw",
    )
    c.add_argument("--grade", default="all", help="grade k or 'all'")
    c.add_argument("--format", choices=["pretty", "json"], default="pretty")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run the verification checks")
    add_presentation_flags(v)
    v.add_argument("--random", action="store_true", help="verify a seeded random suite")
    v.add_argument("--n", type=int, default=3, help="max retained strands for --random")
    v.add_argument("--m", type=int, default=2, help="max closed strands for --random")
    v.add_argument("--max-len", type=int, default=10, help="max word length for --random")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--format", choices=["pretty", "json"], default="pretty")
    v.add_argument("--report-dir", help="write report.json, checks.csv and figures here")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="truncated walk sum vs the closed form")
    add_presentation_flags(o)
    o.add_argument("--t0", default="9/10", help="rational evaluation point in (0,1)")
    o.add_argument("--truncate", type=int, default=60, help="closure-line crossings kept")
    o.add_argument("--format", choices=["pretty", "json"], default="pretty")
    o.add_argument("--report-dir", help="write gaps.csv and convergence.png here")
    o.set_defaults(func=cmd_oracle)

    return p


def _presentation(args):
    if args.example_s:
        return EXAMPLE_S
    if args.strands is None:
        raise BraidInputError("need --strands (or --example-s)")
    if args.strands < 1 or args.close < 0:
        raise BraidInputError("need --strands >= 1 and --close >= 0")
    word = parse_braid(args.braid, args.strands + args.close)
    return ClosurePresentation(args.strands, args.close, word)


def _grades(args, n):
    if args.grade == "all":
        return list(range(n + 1))
    try:
        k = int(args.grade)
    except ValueError:
        raise BraidInputError(f"bad grade {args.grade!r}") from None
    if not 0 <= k <= n:
        raise BraidInputError(f"grade {k} out of range 0..{n}")
    return [k]


def cmd_compute(args):
    cp = _presentation(args)
    out = {}
    if args.invariant == "ltw":
        inv = ltw(cp)
        if args.format == "json":
            out = {"gamma": inv.gamma.to_json(), "denominator": inv.denominator.to_json()}
        else:
            print(f"random-walk invariant of {cp.describe()}")
            print(inv.gamma)
            print(f"loop denominator det(I - Q) = {inv.denominator}")
    elif args.invariant == "ltw-exterior":
        grades = _grades(args, cp.n)
        mats = {k: ltw_exterior(cp, k) for k in grades}
        if args.format == "json":
            out = {str(k): m.to_json() for k, m in mats.items()}
        else:
            for k, m in mats.items():
                print(f"grade {k}:")
                print(m)
    elif args.invariant == "ohtsuki":
        value = functor_value(cp)
        grades = _grades(args, cp.n)
        if args.format == "json":
            out = {str(k): value.component(k).to_json() for k in grades}
        else:
            for k in grades:
                if k == 0:
                    v0 = value.zero_component()
                    print(f"grade 0: {v0}   (at t=1: {v0.specialize_t1()})")
                else:
                    basis = ", ".join(_tensor_label(r, cp.n) for r in weight_basis(cp.n, k))
                    print(f"grade {k} in basis {{{basis}}}:")
                    print(value.component(k))
    else:  # brt
        full = brt_all(cp)
        grades = _grades(args, cp.n)
        if args.format == "json":
            out = {str(k): full.grade_block(k).to_json() for k in grades}
        else:
            for k in grades:
                print(f"wedge grade {k}:")
                print(full.grade_block(k))
    if args.format == "json":
        print(json.dumps(out, indent=2))
    return OK


def _tensor_label(r, n):
    bits = "".join("1" if (r >> (n - j)) & 1 else "0" for j in range(1, n + 1))
    return "e" + "(x)e".join(bits)


def cmd_verify(args):
    if args.random:
        results = run_suite(
            trials=args.trials,
            n_max=args.n,
            m_max=args.m,
            max_len=args.max_len,
            seed=args.seed,
            threads=args.threads,
        )
    else:
        cp = _presentation(args)
        results = [(cp, verify_presentation(cp))]

    if args.report_dir:
        paths = report_mod.write_suite_report(args.report_dir, results)
        print(f"report written: {paths['json']}, {paths['csv']}, {paths['figure']}", file=sys.stderr)

    all_ok = all(rep.passed for _, rep in results)
    if args.format == "json":
        print(json.dumps([rep.to_json() for _, rep in results], indent=2))
    else:
        for i, (cp, rep) in enumerate(results):
            status = "PASS" if rep.passed else "FAIL"
            print(f"[{i}] {status} {cp.describe()} ({rep.elapsed:.3f}s, {len(rep.checks)} checks)")
            if not rep.passed:
                bad = rep.first_failure()
                print(f"    first failure: {bad.name} grade={bad.grade} witness={bad.witness}")
        n_pass = sum(1 for _, rep in results if rep.passed)
        print(f"{n_pass}/{len(results)} presentations fully verified")
    return OK if all_ok else FAILED


def cmd_oracle(args):
    cp = _presentation(args)
    try:
        t0 = Fraction(args.t0)
    except (ValueError, ZeroDivisionError):
        raise BraidInputError(f"bad evaluation point {args.t0!r}") from None
    if not 0 < t0 < 1:
        raise BraidInputError(f"need 0 < t0 < 1, got {t0}")
    if args.truncate < 0:
        raise BraidInputError("truncation must be nonnegative")

    approx = truncated_series_oracle(cp, args.truncate, t0)
    exact = ltw(cp).gamma.map_entries(lambda r: r.evaluate_t(t0))
    gaps = truncated_series_gaps(cp, args.truncate, t0)
    gap = gaps[-1]
    tail_ok = all(
        gaps[i + 10] <= gaps[i] for i in range(max(0, len(gaps) - 20), len(gaps) - 10)
    )

    if args.report_dir:
        paths = report_mod.write_oracle_report(args.report_dir, gaps, t0, args.truncate)
        print(f"report written: {paths['csv']}, {paths['figure']}", file=sys.stderr)

    if args.format == "json":
        print(
            json.dumps(
                {
                    "t0": str(t0),
                    "truncate": args.truncate,
                    "truncated": [str(x) for x in approx.entries],
                    "exact": [str(x) for x in exact.entries],
                    "max_gap": str(gap),
                    "max_gap_float": float(gap),
                    "gap_non_increasing_tail": tail_ok,
                    "gaps_float": [float(g) for g in gaps],
                },
                indent=2,
            )
        )
    else:
        print(f"truncated walk sum at t = {t0}, up to {args.truncate} closure crossings:")
        print(approx)
        print("closed form evaluated exactly:")
        print(exact)
        print(f"max entrywise gap = {gap} ({float(gap):.3e})")
        print(f"gap non-increasing over the last truncation steps: {tail_ok}")
    return OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BraidInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except NotStringLink as exc:
        print(f"not a string link: {exc}", file=sys.stderr)
        return NOT_STRING_LINK
    except StrandwalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
