"""Command-line entry point.

    qrucible verify [--suite FILE]... [--filter GLOB] [--order N]
                    [--denom D] [--json PATH] [--strict] [--jobs K]

Exit code 0 iff all selected cases PASS (SKIPs tolerated unless
--strict). QRUCIBLE_SUITE_DIR overrides the default suite location.
"""

from __future__ import annotations

import argparse
import sys

from .harness import reports_to_json, run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrucible",
        description="Exact verification of q-series identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="verify identity suites")
    v.add_argument(
        "--suite",
        action="append",
        metavar="FILE",
        help="suite file to load (repeatable; default: shipped suites)",
    )
    v.add_argument("--filter", metavar="GLOB", help="select cases by name or tag glob")
    v.add_argument(
        "--order",
        type=int,
        metavar="N",
        help="override the verification order (scaled units, multiples of 1/D)",
    )
    v.add_argument(
        "--denom",
        type=int,
        metavar="D",
        help="refine the exponent grid to lcm(case D, D)",
    )
    v.add_argument("--json", metavar="PATH", help="write a JSON report")
    v.add_argument(
        "--strict", action="store_true", help="treat SKIP as failure (CI mode)"
    )
    v.add_argument("--jobs", type=int, default=1, metavar="K", help="parallel workers")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "verify":
        return 2
    code, reports = run_suite(
        files=args.suite,
        pattern=args.filter,
        order=args.order,
        denom=args.denom,
        jobs=args.jobs,
        strict=args.strict,
    )
    for r in reports:
        if r.status == "PASS":
            detail = f"order {r.proven_order}/{r.denom}"
        elif r.status == "FAIL":
            m = r.mismatch
            detail = f"first mismatch at q^({m.exponent}): {m.lhs} vs {m.rhs}"
        else:
            detail = r.skip_reason or "skipped"
        print(f"{r.status:4} {r.name}  ({detail}, {r.elapsed_ms:.0f} ms)")
    n_pass = sum(r.status == "PASS" for r in reports)
    n_fail = sum(r.status == "FAIL" for r in reports)
    n_skip = sum(r.status == "SKIP" for r in reports)
    print(f"{len(reports)} cases: {n_pass} pass, {n_fail} fail, {n_skip} skip")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(reports_to_json(reports))
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
