"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any fails or errors, 2 for
usage errors (bad flags, unknown ids, malformed expressions).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache

from .corpus.registry import ENV_ORDER, REGISTRY, get, verify
from .errors import DSLSyntaxError, MissingX, QSeriesError, UnknownIdentifier, UnknownIdentity
from .report import rational_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("order must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qrr", description="Verify q-series identities with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    ls = sub.add_parser("list", help="print registered identity ids and anchors")
    ls.add_argument("--format", choices=("table", "json"), default="table")

    def common(sp):
        sp.add_argument("--order", type=_order, help=f"truncation order (overrides ${ENV_ORDER})")
        sp.add_argument("--dsl", action="store_true", help="evaluate the shipped corpus file instead of native builders")
        sp.add_argument("--format", choices=("json", "table"), default="json")

    v = sub.add_parser("verify", help="verify one identity")
    v.add_argument("--id", required=True)
    v.add_argument("--x", type=_rational, help="check a single x instead of the sample points")
    common(v)

    va = sub.add_parser("verify-all", help="verify every registered identity")
    va.add_argument("--jobs", type=int, default=1)
    common(va)

    ex = sub.add_parser("expand", help="expand an expression to a truncated series")
    ex.add_argument("expr")
    ex.add_argument("--order", type=_order, help=f"truncation order (default ${ENV_ORDER})")
    ex.add_argument("--x", type=_rational)
    ex.add_argument("--format", choices=("json", "table"), default="table")
    return p


@lru_cache(maxsize=1)
def _stanzas():
    from .dsl.corpus_file import load_corpus

    return load_corpus()


def _verify_one(id: str, order, x, dsl: bool):
    if dsl:
        from .dsl.corpus_file import verify_stanza

        if id not in _stanzas():
            raise UnknownIdentity(id)
        st = _stanzas()[id]
        if order is None and os.environ.get(ENV_ORDER):
            order = int(os.environ[ENV_ORDER])
        return verify_stanza(st, order, x)
    return verify(id, order, x)


def _emit(report, fmt: str, out):
    print(report.dumps() if fmt == "json" else report.summary(), file=out)


def cmd_list(args, out) -> int:
    if args.format == "json":
        print(json.dumps([{"id": r.id, "anchor": r.anchor} for r in REGISTRY.values()]), file=out)
    else:
        width = max(len(i) for i in REGISTRY)
        for r in REGISTRY.values():
            print(f"{r.id:{width}}  {r.anchor}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        get(args.id)
        report = _verify_one(args.id, args.order, args.x, args.dsl)
    except UnknownIdentity:
        print(f"qrr: unknown identity {args.id!r} (see 'qrr list')", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.format, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify_all(args, out) -> int:
    if args.jobs < 1:
        print("qrr: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    ids = list(REGISTRY)
    if args.jobs == 1:
        reports = (_verify_one(i, args.order, None, args.dsl) for i in ids)
        reports = list(_stream(reports, args.format, out))
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futs = [pool.submit(_verify_one, i, args.order, None, args.dsl) for i in ids]
            reports = list(_stream((f.result() for f in futs), args.format, out))
    failed = [r for r in reports if not r.passed]
    if args.format == "table":
        print(f"{len(reports) - len(failed)}/{len(reports)} passed", file=out)
    return EXIT_OK if not failed else EXIT_FAIL


def _stream(reports, fmt, out):
    for r in reports:
        _emit(r, fmt, out)
        yield r


def cmd_expand(args, out) -> int:
    from .dsl import evaluate, parse

    order = args.order
    if order is None:
        env = os.environ.get(ENV_ORDER)
        if not env:
            print(f"qrr: expand needs --order (or ${ENV_ORDER})", file=sys.stderr)
            return EXIT_USAGE
        order = int(env)
    try:
        series = evaluate(parse(args.expr), order, args.x)
    except DSLSyntaxError as exc:
        print(f"qrr: syntax error at line {exc.line}, column {exc.column}: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownIdentifier, MissingX) as exc:
        print(f"qrr: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QSeriesError as exc:
        print(f"qrr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps({"order": order, "coefficients": [rational_str(c) for c in series.coeffs]}), file=out)
    else:
        for i, c in enumerate(series.coeffs):
            print(f"{i}\t{c}", file=out)
    return EXIT_OK


COMMANDS = {"list": cmd_list, "verify": cmd_verify, "verify-all": cmd_verify_all, "expand": cmd_expand}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return COMMANDS[args.command](args, out)


def main_exit():
    raise SystemExit(main())
