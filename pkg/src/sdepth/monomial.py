"""Monomials, monomial ideals and the small amount of ideal arithmetic we need.

Exponent vectors are plain tuples of ints. Variables are named ``x1..xn`` and
indexed from 1 in every public signature; tuple positions are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Mapping

import numpy as np

# Exponents are meant to fit a signed 32-bit machine integer.
MAX_EXPONENT = 2**31 - 1


def _check_exponent(e: int) -> int:
    if e > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
    return e


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if not exps:
            raise ValueError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        for e in exps:
            _check_exponent(e)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> Monomial:
        """Squarefree monomial on the given 1-based variable indices."""
        exps = [0] * n
        for j in support:
            exps[j - 1] = 1
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: Monomial) -> Monomial:
        _same_length(self, other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def __mul__(self, other: Monomial) -> Monomial:
        _same_length(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def support(self) -> frozenset[int]:
        return support(self)

    def sort_key(self):
        # graded lex with x1 > x2 > ... > xn
        return (self.degree, tuple(-e for e in self.exponents))

    def __str__(self) -> str:
        factors = []
        for j, e in enumerate(self.exponents, start=1):
            if e == 1:
                factors.append(f"x{j}")
            elif e > 1:
                factors.append(f"x{j}^{e}")
        return "*".join(factors) if factors else "1"


def _same_length(a: Monomial, b: Monomial) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n} variables")


def support(m: Monomial) -> frozenset[int]:
    """1-based indices of the variables dividing ``m``."""
    return frozenset(j for j, e in enumerate(m.exponents, start=1) if e > 0)


def minimalize(gens: Iterable[Monomial]) -> frozenset[Monomial]:
    """Divisibility-minimal subset of ``gens`` (same ideal)."""
    gens = set(gens)
    if not gens:
        raise ValueError("cannot minimalize an empty generating set")
    lengths = {g.n for g in gens}
    if len(lengths) != 1:
        raise ValueError(f"monomials of different lengths: {sorted(lengths)}")
    # A proper divisor of g has smaller degree, so each degree class only needs
    # checking against the kept generators of lower degree.
    by_degree: dict[int, list[Monomial]] = {}
    for g in gens:
        by_degree.setdefault(g.degree, []).append(g)
    kept: list[Monomial] = []
    kept_rows = np.zeros((0, lengths.pop()), dtype=np.int64)
    for deg in sorted(by_degree):
        group = by_degree[deg]
        cand = np.array([g.exponents for g in group], dtype=np.int64)
        divisible = np.zeros(len(group), dtype=bool)
        for lo in range(0, len(group), _CHUNK):
            rows = cand[lo:lo + _CHUNK, None, :]
            for start in range(0, len(kept_rows), _CHUNK):
                block = kept_rows[None, start:start + _CHUNK, :]
                divisible[lo:lo + _CHUNK] |= (block <= rows).all(axis=2).any(axis=1)
        fresh = [g for g, d in zip(group, divisible) if not d]
        kept.extend(fresh)
        if fresh:
            kept_rows = np.vstack([kept_rows, cand[~divisible]])
    return frozenset(kept)


_CHUNK = 256


@dataclass(frozen=True)
class MonomialIdeal:
    """A nonzero proper monomial ideal given by its minimal generators.

    The generator set is minimalized and stored in graded lex order, so two
    ideals compare equal exactly when they are equal as ideals.
    """

    n: int
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        gens = [g if isinstance(g, Monomial) else Monomial(tuple(g)) for g in self.gens]
        if not gens:
            raise ValueError("the zero ideal is not supported")
        for g in gens:
            if g.n != self.n:
                raise ValueError(f"generator {g} does not live in {self.n} variables")
            if g.degree == 0:
                raise ValueError("the unit ideal is not supported")
        ordered = tuple(sorted(minimalize(gens), key=Monomial.sort_key))
        object.__setattr__(self, "gens", ordered)

    @classmethod
    def from_exponents(cls, n: int, rows: Iterable[Iterable[int]]) -> MonomialIdeal:
        return cls(n, tuple(Monomial(tuple(r)) for r in rows))

    def __contains__(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    @property
    def gmax(self) -> tuple[int, ...]:
        """Componentwise maximum of the generator exponents."""
        return tuple(max(col) for col in zip(*(g.exponents for g in self.gens)))


@dataclass(frozen=True)
class PrimeIdeal:
    n: int
    vars: frozenset[int]

    def __post_init__(self):
        vs = frozenset(self.vars)
        if not vs:
            raise ValueError("a monomial prime needs at least one variable")
        if not all(1 <= j <= self.n for j in vs):
            raise ValueError(f"variables {sorted(vs)} not within 1..{self.n}")
        object.__setattr__(self, "vars", vs)

    @property
    def height(self) -> int:
        return len(self.vars)

    def __str__(self) -> str:
        return "(" + ",".join(f"x{j}" for j in sorted(self.vars)) + ")"


@dataclass(frozen=True)
class IrreducibleIdeal:
    """Ideal generated by pure powers ``x_j^{e_j}``; ``powers`` maps j -> e_j."""

    n: int
    powers: tuple[tuple[int, int], ...]

    def __init__(self, n: int, powers: Mapping[int, int] | Iterable[tuple[int, int]]):
        items = dict(powers.items() if isinstance(powers, Mapping) else powers)
        if not items:
            raise ValueError("an irreducible ideal needs at least one variable")
        for j, e in items.items():
            if not 1 <= j <= n:
                raise ValueError(f"variable x{j} not within 1..{n}")
            if e < 1:
                raise ValueError(f"exponent of x{j} must be positive, got {e}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "powers", tuple(sorted(items.items())))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(j for j, _ in self.powers)

    @property
    def height(self) -> int:
        return len(self.powers)

    def radical(self) -> PrimeIdeal:
        return PrimeIdeal(self.n, self.support)


def ideal_of_prime(p: PrimeIdeal) -> MonomialIdeal:
    return MonomialIdeal(p.n, tuple(Monomial.from_support(p.n, [j]) for j in sorted(p.vars)))


def ideal_of_irreducible(q: IrreducibleIdeal) -> MonomialIdeal:
    gens = []
    for j, e in q.powers:
        exps = [0] * q.n
        exps[j - 1] = e
        gens.append(Monomial(tuple(exps)))
    return MonomialIdeal(q.n, tuple(gens))


def _check_same_ring(i: MonomialIdeal, j: MonomialIdeal) -> None:
    if i.n != j.n:
        raise ValueError(f"dimension mismatch: {i.n} vs {j.n} variables")


def intersect(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _check_same_ring(i, j)
    return MonomialIdeal(i.n, tuple(u.lcm(v) for u, v in _cartesian(i.gens, j.gens)))


def product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _check_same_ring(i, j)
    return MonomialIdeal(i.n, tuple(u * v for u, v in _cartesian(i.gens, j.gens)))


def intersect_all(ideals: Iterable[MonomialIdeal]) -> MonomialIdeal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("nothing to intersect")
    out = ideals[0]
    for other in ideals[1:]:
        out = intersect(out, other)
    return out


def product_all(ideals: Iterable[MonomialIdeal]) -> MonomialIdeal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("empty product")
    out = ideals[0]
    for other in ideals[1:]:
        out = product(out, other)
    return out


def radical(i: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(i.n, tuple(Monomial(tuple(min(e, 1) for e in g.exponents)) for g in i.gens))


def is_squarefree(i: MonomialIdeal) -> bool:
    return all(e <= 1 for g in i.gens for e in g.exponents)


def equigenerated_degree(i: MonomialIdeal) -> int | None:
    degrees = {g.degree for g in i.gens}
    return degrees.pop() if len(degrees) == 1 else None


def raise_exponent(i: MonomialIdeal, j: int, a: int) -> MonomialIdeal:
    """Bump the exponent of ``x_j`` from ``a`` to ``a+1`` in every generator that has it.

    Every generator must have exponent exactly ``a`` or ``0`` at ``x_j``, and
    both kinds must occur.
    """
    if not 1 <= j <= i.n:
        raise ValueError(f"variable x{j} not within 1..{i.n}")
    if a < 1:
        raise ValueError("a must be positive")
    exps = [g.exponents[j - 1] for g in i.gens]
    bad = [e for e in exps if e not in (0, a)]
    if bad:
        raise ValueError(f"exponent of x{j} must be 0 or {a}, found {bad[0]}")
    r = sum(1 for e in exps if e == a)
    if r == 0 or r == len(exps):
        raise ValueError(f"need both generators with x{j}^{a} and without x{j} (r={r}, m={len(exps)})")
    out = []
    for g in i.gens:
        e = list(g.exponents)
        if e[j - 1] == a:
            e[j - 1] = _check_exponent(a + 1)
        out.append(Monomial(tuple(e)))
    return MonomialIdeal(i.n, tuple(out))


def contract(i: MonomialIdeal) -> MonomialIdeal:
    """``I ∩ K[x1..x_{n-1}]``: drop generators involving the last variable."""
    if i.n < 2:
        raise ValueError("need at least two variables to contract")
    kept = [Monomial(g.exponents[:-1]) for g in i.gens if g.exponents[-1] == 0]
    if not kept:
        raise ValueError("contraction is the zero ideal")
    return MonomialIdeal(i.n - 1, tuple(kept))
