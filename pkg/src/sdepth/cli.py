"""Command-line front end.

Every command except ``kpartite`` (without ``-o``) and ``survey`` (without
``--out``) prints one JSON result envelope on stdout; see ``ENVELOPE_SCHEMA``.

Exit codes: 0 ok, 1 survey sandwich violation, 2 parse/usage error,
3 budget exhausted, 4 poset too large, 5 invalid partition.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .bounds import BoundsSummary, bounds_report, min_primes
from .hypergraph import KPartiteSpec, build_kpartite, enumerate_kpartite
from .monomial import MonomialIdeal
from .poset import (DEFAULT_MAX_POINTS, IntervalPartition, Kind, PartitionError, PosetTooLarge,
                    char_poset)
from .solver import BudgetExhausted, exact_sdepth, verify
from .textformat import ParseError, format_ideal, parse_ideal

log = logging.getLogger("sdepth")

EXIT_OK = 0
EXIT_SANDWICH = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_TOO_LARGE = 4
EXIT_BAD_PARTITION = 5

SURVEY_MAX_N = {Kind.IDEAL: 8, Kind.QUOTIENT: 7}

_INT = {"type": "integer"}
_BRACKET = {
    "type": "object", "additionalProperties": False, "required": ["lower", "upper"],
    "properties": {"lower": _INT, "upper": {"type": ["integer", "null"]}},
}
_REPORT = {
    "type": "object", "additionalProperties": False,
    "required": ["name", "kind", "value", "applicable", "cite"],
    "properties": {
        "name": {"type": "string"},
        "kind": {"enum": ["lower", "upper", "exact"]},
        "value": {"type": ["integer", "null"]},
        "applicable": {"type": "boolean"},
        "cite": {"type": "string"},
        "raw_num": _INT, "raw_den": _INT,
        "reason": {"type": "string"}, "note": {"type": "string"},
        "details": {"type": "object"},
    },
}
_BOUNDS = {
    "type": "object", "additionalProperties": False,
    "required": ["kind", "reports", "bracket", "exact"],
    "properties": {
        "kind": {"enum": ["ideal", "quotient"]},
        "reports": {"type": "array", "items": _REPORT},
        "bracket": _BRACKET,
        "exact": {"type": ["integer", "null"]},
        "heights": {"type": "array", "items": _INT},
        "depth": _INT,
        "lower_at_least_depth": {"type": "boolean"},
    },
}
_POINT = {"type": "array", "items": _INT}
_PARTITION = {
    "type": "object", "additionalProperties": False, "required": ["intervals"],
    "properties": {"intervals": {"type": "array", "items": {
        "type": "object", "additionalProperties": False, "required": ["from", "to"],
        "properties": {"from": _POINT, "to": _POINT}}}},
}
_OUTPUTS = {
    "exact": {
        "type": "object", "additionalProperties": False,
        "required": ["sdepth", "kind", "bracket", "certificate"],
        "properties": {
            "sdepth": _INT, "kind": {"enum": ["ideal", "quotient"]}, "bracket": _BRACKET,
            "certificate": {"oneOf": [_PARTITION, {"type": "string"}]},
            "intervals": _INT,
        },
    },
    "bounds": _BOUNDS,
    "verify": {
        "type": "object", "additionalProperties": False, "required": ["valid", "kind"],
        "properties": {
            "valid": {"type": "boolean"}, "kind": {"enum": ["ideal", "quotient"]},
            "partition_sdepth": _INT, "intervals": _INT, "points": _INT,
            "reason": {"type": "string"}, "point": {"type": ["array", "null"], "items": _INT},
            "message": {"type": "string"},
        },
    },
    "kpartite": {
        "type": "object", "additionalProperties": False, "required": ["part_sizes", "n", "k", "path"],
        "properties": {"part_sizes": {"type": "array", "items": _INT}, "n": _INT, "k": _INT,
                       "path": {"type": "string"}, "generators": _INT},
    },
    "minprimes": {
        "type": "object", "additionalProperties": False, "required": ["primes"],
        "properties": {"primes": {"type": "array", "items": {"type": "array", "items": _INT}},
                       "text": {"type": "array", "items": {"type": "string"}}},
    },
    "survey": {
        "type": "object", "additionalProperties": False, "required": ["rows", "path", "kind"],
        "properties": {"rows": _INT, "path": {"type": "string"},
                       "kind": {"enum": ["ideal", "quotient"]}},
    },
}
ENVELOPE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["command", "input_digest", "outputs", "stats", "version"],
    "properties": {
        "command": {
            "type": "object", "additionalProperties": False, "required": ["name", "args"],
            "properties": {"name": {"enum": sorted(_OUTPUTS)}, "args": {"type": "object"}},
        },
        "input_digest": {"oneOf": [{"type": "null"},
                                   {"type": "string", "pattern": "^sha256:[0-9a-f]{64}$"}]},
        "outputs": {"type": "object"},
        "stats": {"type": "object"},
        "version": {"type": "string"},
    },
    "allOf": [
        {"if": {"properties": {"command": {"properties": {"name": {"const": name}}}}},
         "then": {"properties": {"outputs": schema}}}
        for name, schema in sorted(_OUTPUTS.items())
    ],
}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from exc


def _load_ideal(path: str) -> tuple[MonomialIdeal, str]:
    text = _read_text(path)
    try:
        return parse_ideal(text), text
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _kind(args) -> Kind:
    return Kind.QUOTIENT if args.quotient else Kind.IDEAL


def _envelope(name: str, args: dict, digest: str | None, outputs: dict, stats: dict | None = None) -> dict:
    return {
        "command": {"name": name, "args": args},
        "input_digest": digest,
        "outputs": outputs,
        "stats": stats or {},
        "version": __version__,
    }


def _emit(envelope: dict) -> None:
    json.dump(envelope, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _bounds_json(summary: BoundsSummary) -> dict:
    return summary.to_json()


def cmd_exact(args) -> int:
    ideal, text = _load_ideal(args.file)
    kind = _kind(args)
    try:
        result = exact_sdepth(ideal, kind, node_budget=args.budget, time_budget=args.time_budget,
                              threads=args.threads, max_points=args.max_points)
    except BudgetExhausted as exc:
        raise CliError(EXIT_BUDGET, str(exc)) from exc
    except PosetTooLarge as exc:
        raise CliError(EXIT_TOO_LARGE, str(exc)) from exc
    cert = result.certificate.to_json()
    if args.cert:
        Path(args.cert).write_text(json.dumps(cert, indent=1) + "\n")
        cert_out = args.cert
    else:
        cert_out = cert
    outputs = {
        "sdepth": result.value,
        "kind": kind.value,
        "bracket": {"lower": result.bracket[0], "upper": result.bracket[1]},
        "certificate": cert_out,
        "intervals": len(result.certificate),
    }
    cmd_args = {"file": args.file, "quotient": args.quotient, "cert": args.cert,
                "budget": args.budget, "threads": args.threads}
    _emit(_envelope("exact", cmd_args, _digest(text), outputs, result.stats.to_json()))
    return EXIT_OK


def _parse_order(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"--order must be a comma list of integers, got {text!r}") from exc


def cmd_bounds(args) -> int:
    ideal, text = _load_ideal(args.file)
    kind = _kind(args)
    try:
        summary = bounds_report(ideal, kind, order=_parse_order(args.order), best_order=args.best_order)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    cmd_args = {"file": args.file, "quotient": args.quotient, "order": args.order,
                "best_order": args.best_order}
    _emit(_envelope("bounds", cmd_args, _digest(text), _bounds_json(summary)))
    return EXIT_OK


def cmd_verify(args) -> int:
    ideal, text = _load_ideal(args.file)
    kind = _kind(args)
    raw = _read_text(args.partition)
    try:
        partition = IntervalPartition.from_json(json.loads(raw))
    except (ValueError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"{args.partition}: {exc}") from exc
    try:
        poset = char_poset(ideal, kind, max_points=args.max_points)
    except PosetTooLarge as exc:
        raise CliError(EXIT_TOO_LARGE, str(exc)) from exc
    cmd_args = {"file": args.file, "partition": args.partition, "quotient": args.quotient}
    try:
        value = verify(poset, partition)
    except PartitionError as exc:
        outputs = {"valid": False, "kind": kind.value, "reason": exc.reason,
                   "point": list(exc.point) if exc.point is not None else None,
                   "message": str(exc)}
        _emit(_envelope("verify", cmd_args, _digest(text), outputs))
        print(f"error: invalid partition: {exc}", file=sys.stderr)
        return EXIT_BAD_PARTITION
    outputs = {"valid": True, "kind": kind.value, "partition_sdepth": value,
               "intervals": len(partition), "points": len(poset)}
    _emit(_envelope("verify", cmd_args, _digest(text), outputs))
    return EXIT_OK


def _parse_sizes(text: str) -> KPartiteSpec:
    try:
        return KPartiteSpec(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad part sizes {text!r}: {exc}") from exc


def cmd_kpartite(args) -> int:
    spec = _parse_sizes(args.sizes)
    _, ideal = build_kpartite(spec)
    text = format_ideal(ideal, [f"complete {spec.k}-partite edge ideal, parts {spec.label()}"])
    if args.output is None:
        sys.stdout.write(text)
        return EXIT_OK
    Path(args.output).write_text(text)
    outputs = {"part_sizes": list(spec.part_sizes), "n": spec.n, "k": spec.k,
               "path": args.output, "generators": len(ideal)}
    _emit(_envelope("kpartite", {"sizes": args.sizes, "output": args.output}, None, outputs))
    return EXIT_OK


def cmd_minprimes(args) -> int:
    ideal, text = _load_ideal(args.file)
    primes = min_primes(ideal)
    outputs = {"primes": [sorted(p.vars) for p in primes], "text": [str(p) for p in primes]}
    _emit(_envelope("minprimes", {"file": args.file}, _digest(text), outputs))
    return EXIT_OK


IDEAL_COLUMNS = [("lemma2.4", "lower"), ("cor2.8", "lower"), ("lemma2.4", "upper"),
                 ("thm2.6", "upper"), ("cor2.8", "upper"), ("thm2.13", "upper")]
QUOTIENT_COLUMNS = [("thm3.1", "lower"), ("thm3.1-best", "lower"), ("cor3.4", "lower"),
                    ("cor3.5", "lower"), ("cor3.9", "lower"), ("prop3.8", "upper"),
                    ("cor3.9", "upper")]


def survey_rows(max_n: int, ks: list[int] | None, kind: Kind, *, node_budget: int | None = None,
                threads: int = 1):
    """One dict per canonical part-size tuple; raises AssertionError on a sandwich violation."""
    columns = IDEAL_COLUMNS if kind is Kind.IDEAL else QUOTIENT_COLUMNS
    for spec in enumerate_kpartite(max_n, ks):
        _, ideal = build_kpartite(spec)
        summary = bounds_report(ideal, kind, best_order=kind is Kind.QUOTIENT)
        exact = exact_sdepth(ideal, kind, node_budget=node_budget, threads=threads).value
        by_key = {(r.name, r.kind): r for r in summary.reports}
        row = {"part_sizes": spec.label(), "n": spec.n, "k": spec.k, "exact": exact}
        for name, bkind in columns:
            r = by_key.get((name, bkind))
            row[f"{name}_{bkind}"] = r.value if r is not None and r.applicable else ""
        exacts = [r.value for r in summary.reports if r.kind == "exact" and r.applicable]
        row["formula_exact"] = exacts[0] if exacts else ""
        lower, upper = summary.lower, summary.upper
        row["lower"] = lower
        row["upper"] = "" if upper is None else upper
        row["tight"] = upper is not None and lower == upper
        if kind is Kind.IDEAL:
            guess = spec.k == 2 and spec.n % 2 == 0
            row["n_half_plus_one"] = (exact == spec.n // 2 + 1) if guess else ""
        if exact < lower or (upper is not None and exact > upper):
            raise AssertionError(f"sandwich violated for parts {spec.label()}: "
                                 f"{lower} <= {exact} <= {upper} fails")
        yield row


def cmd_survey(args) -> int:
    kind = _kind(args)
    if args.max_n > SURVEY_MAX_N[kind] and not args.allow_large:
        raise CliError(EXIT_PARSE, f"--max-n above {SURVEY_MAX_N[kind]} for {kind.value} kind "
                                   "needs --allow-large")
    ks = None
    if args.k:
        try:
            ks = [int(x) for x in args.k.split(",")]
        except ValueError as exc:
            raise CliError(EXIT_PARSE, f"--k must be a comma list of integers, got {args.k!r}") from exc
    buf = io.StringIO()
    writer = None
    count = 0
    try:
        for row in survey_rows(args.max_n, ks, kind, node_budget=args.budget, threads=args.threads):
            if writer is None:
                writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
                writer.writeheader()
            writer.writerow(row)
            count += 1
    except AssertionError as exc:
        raise CliError(EXIT_SANDWICH, str(exc)) from exc
    except BudgetExhausted as exc:
        raise CliError(EXIT_BUDGET, str(exc)) from exc
    if args.out is None:
        sys.stdout.write(buf.getvalue())
        return EXIT_OK
    with open(args.out, "w", newline="") as fh:
        fh.write(buf.getvalue())
    cmd_args = {"max_n": args.max_n, "k": args.k, "quotient": args.quotient, "out": args.out}
    _emit(_envelope("survey", cmd_args, None, {"rows": count, "path": args.out, "kind": kind.value}))
    return EXIT_OK


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SDEPTH_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdepth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def ideal_file(p):
        p.add_argument("file", help="ideal file, or - for stdin")
        p.add_argument("--quotient", action="store_true", help="work with S/I instead of I")

    def search_flags(p):
        p.add_argument("--budget", type=int, default=None, metavar="NODES",
                       help="node budget; running out is an error (exit 3)")
        p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
        p.add_argument("--threads", type=int, default=_default_threads(),
                       help="worker processes for the search (default $SDEPTH_THREADS or 1)")

    p = sub.add_parser("exact", help="exact Stanley depth with a certificate")
    ideal_file(p)
    search_flags(p)
    p.add_argument("--cert", metavar="PATH", help="write the certificate here instead of inline")
    p.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bounds", help="every applicable closed-form bound")
    ideal_file(p)
    p.add_argument("--order", help="component order for the ordered quotient bound, e.g. 2,1,3")
    p.add_argument("--best-order", action="store_true", help="also maximize over all orders")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="check an interval partition and report its Stanley depth")
    ideal_file(p)
    p.add_argument("--partition", required=True, metavar="PATH")
    p.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kpartite", help="write the complete k-partite edge ideal")
    p.add_argument("sizes", help="part sizes, e.g. 2,4")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=cmd_kpartite)

    p = sub.add_parser("minprimes", help="minimal primes of S/I")
    p.add_argument("file")
    p.set_defaults(func=cmd_minprimes)

    p = sub.add_parser("survey", help="exact values and bounds over all k-partite part sizes")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--k", help="comma list of part counts to include")
    p.add_argument("--quotient", action="store_true")
    p.add_argument("--out", metavar="CSV")
    p.add_argument("--allow-large", action="store_true")
    search_flags(p)
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
