"""Plain-text ideal files.

Grammar (one item per line, lines trimmed, ``#`` starts a comment line)::

    file     := comment* header comment* "gens:" (comment | monomial)+
    header   := "vars:" SP+ INT
    monomial := factor ("*" factor)*
    factor   := "x" INT ("^" INT)?

Indices are 1-based. Blank lines are ignored. Duplicate or redundant
generators are accepted and dropped with a warning.
"""
from __future__ import annotations

import logging
import re

from .monomial import Monomial, MonomialIdeal, minimalize

log = logging.getLogger(__name__)

_HEADER = re.compile(r"vars:[ \t]+(\d+)$")
_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?")


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


def _parse_monomial(text: str, n: int, lineno: int, offset: int) -> Monomial:
    exps = [0] * n
    pos = 0
    while True:
        m = _FACTOR.match(text, pos)
        if m is None:
            raise ParseError(lineno, offset + pos + 1, f"expected a factor like x3 or x3^2, got {text[pos:]!r}")
        j = int(m.group(1))
        if not 1 <= j <= n:
            raise ParseError(lineno, offset + m.start(1) + 1, f"variable x{j} outside x1..x{n}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e < 1:
            raise ParseError(lineno, offset + m.start(2) + 1, "exponent must be positive")
        exps[j - 1] += e
        pos = m.end()
        if pos == len(text):
            return Monomial(tuple(exps))
        if text[pos] != "*":
            raise ParseError(lineno, offset + pos + 1, f"expected '*' or end of line, got {text[pos]!r}")
        pos += 1


def parse_ideal(text: str) -> MonomialIdeal:
    n = None
    in_gens = False
    gens: list[Monomial] = []
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = raw.strip()
        offset = len(raw) - len(raw.lstrip())
        if not line or line.startswith("#"):
            continue
        if n is None:
            m = _HEADER.match(line)
            if m is None:
                raise ParseError(lineno, offset + 1, "expected header 'vars: <n>'")
            n = int(m.group(1))
            if n < 1:
                raise ParseError(lineno, offset + m.start(1) + 1, "need at least one variable")
            continue
        if not in_gens:
            if line != "gens:":
                raise ParseError(lineno, offset + 1, "expected 'gens:'")
            in_gens = True
            continue
        gens.append(_parse_monomial(line, n, lineno, offset))
    if n is None:
        raise ParseError(last + 1, 1, "missing header 'vars: <n>'")
    if not in_gens:
        raise ParseError(last + 1, 1, "missing 'gens:' line")
    if not gens:
        raise ParseError(last + 1, 1, "no generators")
    for g in gens:
        if g.degree == 0:
            raise ParseError(last, 1, "the unit ideal is not supported")
    kept = minimalize(gens)
    if len(kept) != len(gens):
        log.warning("dropped %d duplicate or redundant generator(s)", len(gens) - len(kept))
    return MonomialIdeal(n, tuple(kept))


def format_ideal(ideal: MonomialIdeal, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"vars: {ideal.n}")
    lines.append("gens:")
    lines.extend(str(g) for g in ideal.gens)
    return "\n".join(lines) + "\n"
