"""Command-line front end: single values, tables, and verification suites.

Exit status: 0 when every check passes, 1 on a mathematical disagreement,
2 on usage errors or cap violations.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from . import closedform as cf
from .exact_arith import format_rational
from .renorm import DEFAULT_MARGIN, CharacterState, zeta_ems_birkhoff, zeta_ems_lemma311
from .verify import SUITES, map_items, run_suite

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2
DEFAULT_CAP = 14
PIPELINES = {
    "ems": ("birkhoff", "lemma", "closed", "recurrence"),
    "fkmt": ("closed", "recurrence"),
}


class UsageError(Exception):
    pass


def parse_composition(text: str) -> tuple[int, ...]:
    try:
        ks = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"composition must be comma-separated non-negative integers: {text!r}")
    if any(k < 0 for k in ks):
        raise UsageError(f"composition entries must be non-negative: {text!r}")
    return ks


def format_composition(ks: Sequence[int]) -> str:
    return ",".join(map(str, ks))


def approx(q: Fraction, digits: int = 20) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def _check_cap(weight: int, cap: int, what: str) -> None:
    if weight > cap:
        raise UsageError(f"{what} {weight} exceeds the cap {cap}; raise it with --cap")


def compute(kind: str, ks: tuple[int, ...], pipeline: str, margin: int) -> dict[str, Fraction]:
    names = PIPELINES[kind] if pipeline == "all" else (pipeline,)
    if any(p not in PIPELINES[kind] for p in names):
        raise UsageError(f"pipeline {pipeline!r} is not available for {kind}")
    out: dict[str, Fraction] = {}
    state = CharacterState.for_weight(sum(ks) + len(ks), margin)
    for p in names:
        if p == "birkhoff":
            out[p] = zeta_ems_birkhoff(ks, state)
        elif p == "lemma":
            out[p] = zeta_ems_lemma311(ks, state)
        elif p == "closed":
            out[p] = cf.zeta_ems_closed(ks) if kind == "ems" else cf.zeta_fkmt(ks)
        else:
            out[p] = cf.zeta_ems_recurrence(ks) if kind == "ems" else cf.zeta_fkmt_recurrence(ks)
    return out


def output_record(ks: tuple[int, ...], kind: str, values: dict[str, Fraction], decimal: bool) -> dict:
    """value_<kind> comes from the requested pipelines, the other kind from its closed form."""
    main = next(iter(values.values()))
    other = cf.zeta_fkmt(ks) if kind == "ems" else cf.zeta_ems_closed(ks)
    ems, fkmt = (main, other) if kind == "ems" else (other, main)
    rec = {
        "ks": list(ks),
        "value_ems": format_rational(ems),
        "value_fkmt": format_rational(fkmt),
        "pipelines_agreed": len(set(values.values())) == 1,
    }
    if decimal:
        rec["approx_decimal_ems"] = approx(ems)
        rec["approx_decimal_fkmt"] = approx(fkmt)
    return rec


def cmd_value(args) -> int:
    ks = parse_composition(args.ks)
    if args.pipeline in ("birkhoff", "lemma", "all") and args.kind == "ems":
        _check_cap(sum(ks) + len(ks), args.cap, "weight Σk + n =")
    values = compute(args.kind, ks, args.pipeline, args.precision_margin)
    rec = output_record(ks, args.kind, values, args.decimal)
    if args.format == "json":
        print(json.dumps(rec))
    else:
        for name, v in values.items():
            print(f"{name:<11}{format_rational(v)}")
        main = next(iter(values.values()))
        print(f"zeta_{args.kind}({format_composition(ks)}) = {format_rational(main)}")
        if args.decimal:
            print(f"approx (decimal, not exact) = {approx(main)}")
        print(f"agreed: {'true' if rec['pipelines_agreed'] else 'false'}")
    if not rec["pipelines_agreed"]:
        print("pipelines disagree: " + ", ".join(
            f"{k}={format_rational(v)}" for k, v in values.items()), file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def _closed_ems(ks):
    return cf.zeta_ems_closed(ks)


def _closed_fkmt(ks):
    return cf.zeta_fkmt(ks)


def cmd_table(args) -> int:
    if args.max_depth < 1 or args.max_weight < 0:
        raise UsageError("need --max-depth >= 1 and --max-weight >= 0")
    comps = list(cf.compositions(args.max_depth, args.max_weight))
    fn = _closed_ems if args.kind == "ems" else _closed_fkmt
    values = map_items(fn, comps, args.parallel)
    out = sys.stdout
    if args.format == "json":
        records = [output_record(ks, args.kind, {"closed": v}, args.decimal)
                   for ks, v in zip(comps, values)]
        json.dump(records, out, indent=1)
        out.write("\n")
    elif args.format == "csv":
        writer = csv.writer(out, delimiter=";", lineterminator="\n")
        writer.writerow(["k", "value"] + (["approx_decimal"] if args.decimal else []))
        for ks, v in zip(comps, values):
            writer.writerow([format_composition(ks), format_rational(v)]
                            + ([approx(v)] if args.decimal else []))
    else:
        for ks, v in zip(comps, values):
            line = f"({format_composition(ks)})\t{format_rational(v)}"
            if args.decimal:
                line += f"\t~{approx(v)}"
            print(line, file=out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if (args.depth is not None and args.depth < 1) or (args.weight is not None and args.weight < 0):
        raise UsageError("need --depth >= 1 and --weight >= 0")
    if args.weight is not None:
        _check_cap(args.weight, args.cap, "weight")
    reports = run_suite(args.suite, args.depth, args.weight, args.precision_margin, args.parallel)
    ok = True
    for rep in reports:
        status = "pass" if rep.ok else "FAIL"
        print(f"{rep.suite}: {status} ({rep.checked} checks, {len(rep.failures)} failures)")
        for f in rep.failures:
            print(f"  {f}")
        ok &= rep.ok
    return EXIT_OK if ok else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-margin", type=int, default=DEFAULT_MARGIN,
                        help="extra orders of z kept beyond the word weight (default %(default)s)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="weight cap; raising it prints a warning (default %(default)s)")
    common.add_argument("--parallel", action="store_true",
                        help="fan out over compositions in worker processes")
    common.add_argument("--decimal", action="store_true",
                        help="add an approximate decimal column (exact rationals are always shown)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(
        prog="mzvren",
        description="Exact values of renormalized multiple zeta values at non-positive integers.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("value", parents=[common], help="one value, optionally cross-checked")
    v.add_argument("kind", choices=["ems", "fkmt"])
    v.add_argument("ks", help="k1,...,kn for zeta(-k1, ..., -kn)")
    v.add_argument("--pipeline", choices=["birkhoff", "lemma", "closed", "recurrence", "all"],
                   default="all")
    v.add_argument("--format", choices=["json", "plain"], default="plain")
    v.set_defaults(func=cmd_value)

    t = sub.add_parser("table", parents=[common], help="closed-form values over a range")
    t.add_argument("kind", choices=["ems", "fkmt"])
    t.add_argument("--max-depth", type=int, default=3)
    t.add_argument("--max-weight", type=int, default=4)
    t.add_argument("--format", choices=["json", "csv", "plain"], default="plain")
    t.set_defaults(func=cmd_table)

    ver = sub.add_parser("verify", parents=[common], help="run identity suites")
    ver.add_argument("suite", choices=sorted(SUITES) + ["all"])
    ver.add_argument("--depth", type=int, default=None,
                     help="maximum depth (default: a per-suite scale)")
    ver.add_argument("--weight", type=int, default=None,
                     help="maximum weight (default: a per-suite scale)")
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    if args.cap != DEFAULT_CAP:
        print(f"mzvren: warning: weight cap changed from {DEFAULT_CAP} to {args.cap}; "
              "run time may grow quickly", file=sys.stderr)
    try:
        if args.precision_margin < 0:
            raise UsageError("--precision-margin must be >= 0")
        return args.func(args)
    except UsageError as exc:
        print(f"mzvren: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
