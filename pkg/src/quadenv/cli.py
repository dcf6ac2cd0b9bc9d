"""Command-line front end: ``quadenv construct | a2 | verify | scroll``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exactlinalg import DEFAULT_PRIME, SECOND_PRIME, FieldError, GF
from .quadspace import CertificationError, SamplingPolicy, basis_report, quadric_basis
from .scrollcalc import ScrollCalcError, ScrollDivisorClass, describe
from .varieties import (
    ConstructionError,
    elliptic_normal_curve,
    from_json,
    plane_quartic_embedding,
    point_config_on_rnc,
    projected_elliptic_curve,
    rational_curve_with_4secant,
    rational_normal_curve,
    scroll,
    scroll_divisor,
    to_json,
)
from .verifier import SUITES, resolve_suite, run_suites

EXIT_PASS, EXIT_FAIL, EXIT_CERT, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


def _int_list(text: str) -> list:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def parse_range(text: str) -> list:
    """``2..6`` -> [2, 3, 4, 5, 6]; ``4`` -> [4]; ``3,5`` -> [3, 5]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return _int_list(text)


CONSTRUCTORS = {
    "RNC": lambda s: rational_normal_curve(int(s["r"])),
    "Scroll": lambda s: scroll(s["type"]),
    "ScrollDivisor": lambda s: scroll_divisor(s["type"], int(s["a"]), int(s["b"]), int(s.get("seed", 0))),
    "EllipticNormal": lambda s: elliptic_normal_curve(int(s["c"]), Fraction(s.get("A", -1)), Fraction(s.get("B", 1))),
    "ProjectedElliptic": lambda s: projected_elliptic_curve(int(s["c"]), int(s.get("seed", 0))),
    "RationalWithMSecant": lambda s: rational_curve_with_4secant(int(s["c"]), int(s.get("seed", 0))),
    "PlaneQuarticEmbedding": lambda s: plane_quartic_embedding(int(s.get("c", 4)), int(s.get("seed", 0))),
    "PointConfig": lambda s: point_config_on_rnc(int(s["c"]), int(s["m"]), int(s.get("seed", 0))),
}


def construct_from_spec(spec: dict):
    tag = spec.get("tag")
    if tag not in CONSTRUCTORS:
        raise UsageError(f"unknown constructor {tag!r}; choose from {', '.join(CONSTRUCTORS)}")
    try:
        return CONSTRUCTORS[tag](spec)
    except KeyError as exc:
        raise UsageError(f"missing parameter {exc} for {tag}") from None


def _load_json_arg(arg: str) -> dict:
    """Accept a path or an inline JSON object."""
    text = arg if arg.lstrip().startswith("{") else open(arg, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _policy(args) -> SamplingPolicy:
    primes = (args.prime, SECOND_PRIME if args.prime != SECOND_PRIME else DEFAULT_PRIME)
    return SamplingPolicy(primes=primes, seed=args.seed, symbolic=args.field == "rational")


def _emit(args, payload: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        print(payload)


def _render(args, doc: dict) -> str:
    if args.format == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=str)
    if args.format == "csv":
        keys = [k for k in doc if not isinstance(doc[k], (dict, list))]
        return ",".join(keys) + "\n" + ",".join(str(doc[k]) for k in keys)
    return "\n".join(f"{k}: {v}" for k, v in doc.items() if not isinstance(v, (dict, list))) or json.dumps(doc)


def cmd_construct(args) -> int:
    v = construct_from_spec(_load_json_arg(args.spec))
    doc = to_json(v)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(json.dumps(v.summary(), sort_keys=True))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_PASS


def cmd_a2(args) -> int:
    doc = _load_json_arg(args.variety)
    v = from_json(doc) if "ambientDim" in doc else construct_from_spec(doc)
    basis = quadric_basis(v, _policy(args))
    report = basis_report(v, basis, emit=args.emit_basis)
    _emit(args, _render(args, report))
    return EXIT_PASS


def cmd_verify(args) -> int:
    names = list(SUITES) if args.all else args.suites
    if not names:
        raise UsageError("name a suite or pass --all")
    try:
        names = [resolve_suite(n) for n in names]
    except KeyError as exc:
        raise UsageError(f"unknown suite {exc}; known: {', '.join(SUITES)}") from None
    opts = {"seed": args.seed, "sweep": args.sweep or args.type is None}
    if args.c:
        opts["c"] = parse_range(args.c)
    if args.type:
        opts["types"] = [tuple(_int_list(t)) for t in args.type]
    if args.a is not None:
        opts["a"] = args.a
    if args.b is not None:
        opts["b"] = args.b
    jobs = args.jobs if args.jobs else len(names)
    report = run_suites(names, _policy(args), opts, jobs=jobs)
    payload = {"json": report.to_json, "csv": report.to_csv, "text": report.to_text}[args.format]()
    _emit(args, payload)
    return report.exit_code()


def cmd_scroll(args) -> int:
    cls = ScrollDivisorClass(tuple(_int_list(args.type)), args.a, args.b)
    _emit(args, _render(args, describe(cls)))
    return EXIT_PASS


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    """Global flags; the copy attached to subcommands must not clobber values given earlier."""
    common = argparse.ArgumentParser(add_help=False)

    def default(value):
        return argparse.SUPPRESS if suppress else value

    common.add_argument("--field", choices=["rational", "prime"], default=default("rational"),
                        help="rational adds the exact kernel over Q; prime uses sampled kernels only")
    common.add_argument("--prime", type=int, default=default(DEFAULT_PRIME), help="first working prime")
    common.add_argument("--seed", type=int, default=default(int(os.environ.get("QC_SEED", 0))))
    common.add_argument("--format", choices=["json", "csv", "text"], default=default("json"))
    common.add_argument("--out", default=default(None), help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=default(0), help="parallel suites (default: one per suite)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadenv", description=__doc__, parents=[_global_flags(False)])
    common = _global_flags(True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a variety from a JSON spec")
    p.add_argument("spec", help='path or inline JSON, e.g. {"tag":"RNC","r":3}')
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("a2", parents=[common], help="count quadrics through a variety")
    p.add_argument("variety", help="variety file written by construct, or a constructor spec")
    p.add_argument("--emit-basis", action="store_true")
    p.set_defaults(func=cmd_a2)

    p = sub.add_parser("verify", parents=[common], help="run scenario suites")
    p.add_argument("suites", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--c", help="codimension range such as 2..6")
    p.add_argument("--type", action="append", help="scroll type such as 1,2 (repeatable)")
    p.add_argument("--sweep", action="store_true", help="sweep a and b for divisor classes")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scroll", parents=[common], help="closed-form data for a divisor class")
    p.add_argument("--type", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_scroll)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE
    try:
        GF(args.prime)
        return args.func(args)
    except (UsageError, FieldError, ScrollCalcError, ConstructionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationError as exc:
        print(f"certification error: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
