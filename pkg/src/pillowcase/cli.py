"""Command-line entry points.

Exit status is 0 when every check passes, 1 when a check fails and 2 for a
configuration error (bad flag, bad range, unwritable output).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .qgroup import cosine_operator, kauffman_operator, sine_operator
from .serialize import emit_matrix, emit_polynomial, parse_polynomial
from .star import check_correspondence, star
from .suites import SUITES, SuiteParams, run_suites, worker_count
from .trigpoly import ComplexRing, CyclotomicRing, FormalRing
from .uq_sl2 import verify_relations
from .weyl import ComplexMatrix

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B with integers A <= B, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}: need A <= B")
    return lo, hi


def _level(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"r must be an integer, got {text!r}") from None
    if r < 3:
        raise argparse.ArgumentTypeError(f"r must be >= 3, got {r}")
    return r


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return v


def _quad_y(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"quad-y must be an integer, got {text!r}") from None
    if v <= 0 or v % 20:
        raise argparse.ArgumentTypeError(f"quad-y must be a positive multiple of 20, got {v}")
    return v


def _trunc(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"trunc-order must be an integer, got {text!r}") from None
    if not 0 <= v <= 10:
        raise argparse.ArgumentTypeError(f"trunc-order must lie in 0..10, got {v}")
    return v


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _suite_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r-range", type=_range)
    p.add_argument("--pq-range", type=_range)
    p.add_argument("--tol", type=_positive_float)
    p.add_argument("--trunc-order", type=_trunc, default=8)
    p.add_argument("--quad-y", type=_quad_y, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=("standard", "mu-nu"), default="standard")
    _common(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pillowcase", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("uq-verify", help="check the quantum group relations on every V^k")
    p.add_argument("--r", type=_level, required=True)
    _common(p)

    p = sub.add_parser("qgroup", help="exact operators on the quantum group side")
    qsub = p.add_subparsers(dest="action", required=True)
    m = qsub.add_parser("matrix", help="print C(p,q), S(p,q) or (p,q)_T")
    m.add_argument("--r", type=_level, required=True)
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--op", choices=("cosine", "sine", "kauffman"), default="cosine")
    g = m.add_mutually_exclusive_group()
    g.add_argument("--exact", dest="complex", action="store_false")
    g.add_argument("--complex", dest="complex", action="store_true")
    m.set_defaults(complex=False)
    m.add_argument("--out")

    p = sub.add_parser("theta", help="theta function identities at level N")
    tsub = p.add_subparsers(dest="action", required=True)
    c = tsub.add_parser("check")
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--variant", choices=("standard", "mu-nu"), default="standard")
    c.add_argument("--quad-y", type=_quad_y, default=400)
    c.add_argument("--seed", type=int, default=0)
    _common(c)

    p = sub.add_parser("verify", help="compare the two quantizations")
    vsub = p.add_subparsers(dest="action", required=True)
    e = vsub.add_parser("equivalence")
    _suite_flags(e)

    p = sub.add_parser("star", help="multiply two cosine polynomials")
    p.add_argument("--mode", choices=("exact", "formal", "complex"), default="exact")
    p.add_argument("--r", type=_level, default=3)
    p.add_argument("--expr-a", required=True)
    p.add_argument("--expr-b", required=True)
    p.add_argument("--trunc-order", type=_trunc, default=8)
    p.add_argument("--out")

    p = sub.add_parser("suite", help="run named verification suites")
    p.add_argument("names", nargs="+", metavar="NAME", help=" | ".join(SUITES))
    _suite_flags(p)
    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc.strerror}") from None


def _check_output(path: str | None) -> None:
    if path is None:
        return
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise ConfigError(f"cannot write {path}: directory missing or not writable")
    if os.path.isdir(path):
        raise ConfigError(f"cannot write {path}: is a directory")


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _report(report, args) -> int:
    _write(report.to_csv() if args.format == "csv" else report.to_json(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _params(args) -> SuiteParams:
    return SuiteParams(
        r_range=args.r_range,
        pq_range=args.pq_range,
        tol=args.tol,
        trunc_order=args.trunc_order,
        quad_y=args.quad_y,
        seed=args.seed,
        variant=args.variant,
    )


def cmd_uq_verify(args) -> int:
    reports = [verify_relations(k, args.r) for k in range(1, args.r)]
    rows = [{**rep.as_dict(), "all_hold": rep.all_hold} for rep in reports]
    ok = all(rep.all_hold for rep in reports)
    if args.format == "csv":
        keys = list(rows[0])
        text = ",".join(keys) + "\n" + "".join(",".join(str(row[k]) for k in keys) + "\n" for row in rows)
    else:
        text = _dump({"r": args.r, "relations": rows, "passed": ok})
    _write(text, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_qgroup(args) -> int:
    build = {"cosine": cosine_operator, "sine": sine_operator, "kauffman": kauffman_operator}[args.op]
    op = build(args.p, args.q, args.r)
    payload = emit_matrix(ComplexMatrix(op.to_complex(), "zeta_ascending"), args.r) if args.complex else emit_matrix(op)
    _write(_dump(payload), args.out)
    return EXIT_PASS


def cmd_theta(args) -> int:
    if args.N < 6 or args.N % 2:
        raise ConfigError(f"N must be an even integer >= 6, got {args.N}")
    r = args.N // 2
    params = SuiteParams(r_range=(r, r), quad_y=args.quad_y, seed=args.seed, variant=args.variant)
    return _report(run_suites(["theta-identities", "cocycle"], params), args)


def cmd_verify(args) -> int:
    return _report(run_suites(["equivalence"], _params(args)), args)


def cmd_suite(args) -> int:
    return _report(run_suites(args.names, _params(args)), args)


def cmd_star(args) -> int:
    ring = {
        "exact": lambda: CyclotomicRing(args.r),
        "formal": lambda: FormalRing(args.trunc_order),
        "complex": lambda: ComplexRing(2 * args.r),
    }[args.mode]()
    a = parse_polynomial(args.expr_a, ring)
    b = parse_polynomial(args.expr_b, ring)
    payload = {"a": emit_polynomial(a), "b": emit_polynomial(b), "product": emit_polynomial(star(a, b))}
    if args.mode == "formal":
        payload["correspondence"] = check_correspondence(a, b, args.trunc_order).as_dict()
    _write(_dump(payload), args.out)
    return EXIT_PASS


COMMANDS = {
    "uq-verify": cmd_uq_verify,
    "qgroup": cmd_qgroup,
    "theta": cmd_theta,
    "verify": cmd_verify,
    "star": cmd_star,
    "suite": cmd_suite,
}


_RANGE_FLAGS = ("--r-range", "--pq-range")


def _attach_ranges(argv: list[str]) -> list[str]:
    # "--pq-range -5:5" would otherwise read -5:5 as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            out.append(f"{tok}={next(it, '')}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_ranges(sys.argv[1:] if argv is None else list(argv)))
    try:
        worker_count()
        _check_output(getattr(args, "out", None))
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"pillowcase: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
