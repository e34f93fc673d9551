"""Closed-form Stanley depth bounds and exact-value formulas.

Every formula returns a :class:`BoundReport`. A formula whose hypotheses do
not hold still returns a report, with ``applicable=False`` and the failed
hypothesis in ``reason``; the aggregator keeps those so callers can explain
why a bound is missing.

Half-integer upper bounds are floored and lower bounds ceiled; the raw
rational is kept next to the integer value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import ceil, comb, floor
from typing import Iterable, Sequence

from .monomial import (IrreducibleIdeal, Monomial, MonomialIdeal, PrimeIdeal,
                       ideal_of_irreducible, intersect_all, is_squarefree,
                       equigenerated_degree)
from .poset import Kind

MAX_PRIMES = 10**5
MAX_COUNTED_SUBSETS = 5 * 10**6
MAX_ORDER_SEARCH = 8


@dataclass(frozen=True)
class BoundReport:
    name: str
    kind: str  # "lower" | "upper" | "exact"
    value: int | None
    applicable: bool
    cite: str
    raw: Fraction | None = None
    reason: str = ""
    note: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "value": self.value,
               "applicable": self.applicable, "cite": self.cite}
        if self.raw is not None:
            out["raw_num"] = self.raw.numerator
            out["raw_den"] = self.raw.denominator
        if self.reason:
            out["reason"] = self.reason
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = self.details
        return out

    @property
    def gives_lower(self) -> bool:
        return self.applicable and self.kind in ("lower", "exact")

    @property
    def gives_upper(self) -> bool:
        return self.applicable and self.kind in ("upper", "exact")


def _ok(name, kind, raw, cite, **kw) -> BoundReport:
    raw = Fraction(raw)
    value = floor(raw) if kind == "upper" else ceil(raw)
    return BoundReport(name, kind, value, True, cite, raw=raw, **kw)


def _na(name, kind, cite, reason) -> BoundReport:
    return BoundReport(name, kind, None, False, cite, reason=reason)


# --- decompositions -------------------------------------------------------

@dataclass(frozen=True)
class DecomposedIdeal:
    """``I = Q_1 ∩ ... ∩ Q_k`` with pairwise disjoint radical supports.

    ``irreducible`` is False when some component is not generated by pure
    powers; such decompositions exist only to build counterexamples and no
    formula treats them as applicable.
    """

    n: int
    components: tuple[MonomialIdeal, ...]
    irreducible: bool = True

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("need at least one component")
        seen: set[int] = set()
        for c in comps:
            if c.n != self.n:
                raise ValueError("components live in different rings")
            s = _support_of(c)
            if s & seen:
                raise ValueError(f"overlapping supports at variables {sorted(s & seen)}")
            seen |= s
        object.__setattr__(self, "components", comps)

    @property
    def supports(self) -> tuple[frozenset[int], ...]:
        return tuple(_support_of(c) for c in self.components)

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.supports)

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def odd_count(self) -> int:
        return sum(1 for h in self.heights if h % 2)

    @property
    def spans_maximal(self) -> bool:
        return sum(self.heights) == self.n

    @property
    def is_prime(self) -> bool:
        return self.irreducible and all(is_squarefree(c) for c in self.components)

    @property
    def ideal(self) -> MonomialIdeal:
        return intersect_all(self.components)

    @classmethod
    def from_irreducibles(cls, comps: Iterable[IrreducibleIdeal]) -> DecomposedIdeal:
        comps = list(comps)
        return cls(comps[0].n, tuple(ideal_of_irreducible(q) for q in comps), True)


def _support_of(ideal: MonomialIdeal) -> frozenset[int]:
    out: set[int] = set()
    for g in ideal.gens:
        out |= g.support()
    return frozenset(out)


def _is_pure_power_ideal(ideal: MonomialIdeal) -> bool:
    return all(len(g.support()) == 1 for g in ideal.gens)


def decompose(ideal: MonomialIdeal) -> DecomposedIdeal | None:
    """Recover an irreducible decomposition with disjoint supports, if there is one."""
    primes = min_primes(ideal)
    supports = [p.vars for p in primes]
    if any(a & b for a, b in combinations(supports, 2)):
        return None
    g = ideal.gmax
    comps = []
    for s in supports:
        gens = []
        for j in sorted(s):
            e = [0] * ideal.n
            e[j - 1] = g[j - 1]
            gens.append(Monomial(tuple(e)))
        comps.append(MonomialIdeal(ideal.n, tuple(gens)))
    d = DecomposedIdeal(ideal.n, tuple(comps), True)
    return d if d.ideal == ideal else None


# --- counting --------------------------------------------------------------

def _masks(ideal: MonomialIdeal) -> list[int]:
    out = []
    for g in ideal.gens:
        m = 0
        for j, e in enumerate(g.exponents):
            if e:
                m |= 1 << j
        out.append(m)
    return out


def count_squarefree_members(ideal: MonomialIdeal, t: int) -> int:
    """Number of squarefree degree-``t`` monomials in a squarefree ideal."""
    if not is_squarefree(ideal):
        raise ValueError("count_squarefree_members needs a squarefree ideal")
    n = ideal.n
    if t < 0 or t > n:
        return 0
    if comb(n, t) > MAX_COUNTED_SUBSETS:
        raise ValueError(f"C({n},{t}) subsets is too many to count")
    gens = _masks(ideal)
    total = 0
    for combo in combinations(range(n), t):
        m = 0
        for j in combo:
            m |= 1 << j
        if any(g & m == g for g in gens):
            total += 1
    return total


def lemma24_bounds(ideal: MonomialIdeal) -> list[BoundReport]:
    """Degree counting bracket ``d <= sdepth(I) <= d + floor(B/A)``, plus the
    exact shortcut when ``C(n, d+1) < |G(I)|``."""
    cite = "Lemma 2.4"
    d = equigenerated_degree(ideal)
    if not is_squarefree(ideal):
        reason = "ideal is not squarefree"
    elif d is None:
        reason = "generators have different degrees"
    elif comb(ideal.n, d + 1) > MAX_COUNTED_SUBSETS:
        reason = "too many degree d+1 subsets to count"
    else:
        reason = ""
    if reason:
        return [_na("lemma2.4", "lower", cite, reason), _na("lemma2.4", "upper", cite, reason),
                _na("cor2.5", "exact", "Cor 2.5", reason)]
    a = count_squarefree_members(ideal, d)
    b = count_squarefree_members(ideal, d + 1)
    details = {"A": a, "B": b, "d": d}
    out = [_ok("lemma2.4", "lower", d, cite, details=details),
           _ok("lemma2.4", "upper", d + b // a, cite, details=details)]
    if comb(ideal.n, d + 1) < len(ideal.gens):
        out.append(_ok("cor2.5", "exact", d, "Cor 2.5"))
    else:
        out.append(_na("cor2.5", "exact", "Cor 2.5", "C(n, d+1) >= number of generators"))
    return out


# --- disjoint intersections ---------------------------------------------

def _decomposition_reason(dec: DecomposedIdeal, need_prime: bool = False) -> str:
    if not dec.irreducible:
        return "components are not irreducible"
    if need_prime and not dec.is_prime:
        return "components are not prime"
    if not dec.spans_maximal:
        return "component supports do not cover every variable"
    return ""


def thm26_upper(dec: DecomposedIdeal) -> BoundReport:
    """``sdepth(I) <= (n+k)/2``; applied to the radical for irreducible components."""
    cite = "Thm 2.6"
    reason = _decomposition_reason(dec)
    if reason:
        return _na("thm2.6", "upper", cite, reason)
    return _ok("thm2.6", "upper", Fraction(dec.n + dec.k, 2), cite)


def cor28_bounds(dec: DecomposedIdeal) -> list[BoundReport]:
    """Odd-height bracket ``(n+|A|)/2 <= sdepth(I) <= floor((n+k)/2)`` and its exact cases."""
    reason = _decomposition_reason(dec)
    if reason:
        return [_na("cor2.8", "lower", "Cor 2.8", reason), _na("cor2.8", "upper", "Cor 2.8", reason)]
    n, k, a = dec.n, dec.k, dec.odd_count
    # n + |A| is even here, so the lower bound is an integer
    assert (n + a) % 2 == 0
    assert (n + a) // 2 == sum(ceil(h / 2) for h in dec.heights)
    out = [_ok("cor2.8", "lower", Fraction(n + a, 2), "Cor 2.8"),
           _ok("cor2.8", "upper", Fraction(n + k, 2), "Cor 2.8")]
    if a == k:
        out.append(_ok("cor2.9", "exact", Fraction(n + k, 2), "Cor 2.9"))
    elif k % 2 == 1 and a == k - 1:
        out.append(_ok("cor2.10", "exact", Fraction(n + k - 1, 2), "Cor 2.10"))
    return out


def cor212_bounds(d: int, k: int) -> list[BoundReport]:
    """Bounds for the edge ideal with ``k`` parts of ``d`` vertices each."""
    if d < 1 or k < 1:
        raise ValueError("part size and part count must be positive")
    n = d * k
    cite = "Cor 2.12"
    if d % 2:
        return [_ok("cor2.12", "exact", Fraction(n + k, 2), cite)]
    return [_ok("cor2.12", "lower", Fraction(n, 2), cite),
            _ok("cor2.12", "upper", Fraction(n + k, 2), cite)]


# --- minimal primes --------------------------------------------------------

def _minimal_sets(masks: Iterable[int]) -> list[int]:
    masks = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in masks:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def minimal_transversals(edges: Sequence[int], cap: int = MAX_PRIMES) -> list[int]:
    """Inclusion-minimal vertex sets (bitmasks) meeting every edge."""
    edges = _minimal_sets(edges)
    if any(e == 0 for e in edges):
        return []
    found: list[int] = []

    # incidence[v]: bitset over edge indices of the edges containing vertex v
    incidence = [0] * max(e.bit_length() for e in edges)
    for idx, f in enumerate(edges):
        while f:
            low = f & -f
            incidence[low.bit_length() - 1] |= 1 << idx
            f ^= low

    def has_private_edges(chosen: int) -> bool:
        # every chosen vertex must be the only chosen vertex of some edge
        verts = [v for v in range(len(incidence)) if chosen >> v & 1]
        seen_once = seen_twice = 0
        for v in verts:
            seen_twice |= seen_once & incidence[v]
            seen_once |= incidence[v]
        return all(incidence[v] & ~seen_twice for v in verts)

    def rec(chosen: int, uncovered: list[int], excluded: int) -> None:
        if not uncovered:
            found.append(chosen)
            if len(found) > cap:
                raise ValueError(f"more than {cap} minimal primes")
            return
        edge = min(uncovered, key=lambda f: ((f & ~excluded).bit_count(), f))
        cand = edge & ~excluded
        while cand:
            low = cand & -cand
            cand ^= low
            new = chosen | low
            if has_private_edges(new):
                rec(new, [f for f in uncovered if not f & low], excluded)
            excluded |= low

    rec(0, edges, 0)
    return found


def min_primes(ideal: MonomialIdeal, cap: int = MAX_PRIMES) -> list[PrimeIdeal]:
    masks = minimal_transversals(_masks(ideal), cap)
    primes = [PrimeIdeal(ideal.n, frozenset(j + 1 for j in range(ideal.n) if m >> j & 1))
              for m in masks]
    primes.sort(key=lambda p: tuple(sorted(p.vars)))
    return primes


# Instances for which a published example quotes a different number than the
# formula gives; keyed by the sorted minimal-prime variable sets.
_QUOTED_THM213 = {
    (36, (tuple(range(1, 10)), tuple(range(9, 19)), tuple(range(18, 28)), tuple(range(27, 37)))): 23,
}


def thm213_upper(ideal: MonomialIdeal) -> BoundReport:
    """``sdepth(I) <= (2n + r - sum d_i)/2`` from the minimal primes of ``S/I``."""
    cite = "Thm 2.13"
    primes = min_primes(ideal)
    n = ideal.n
    covered = set().union(*(p.vars for p in primes))
    if len(covered) != n:
        return _na("thm2.13", "upper", cite, "minimal primes do not sum to the maximal ideal")
    d = []
    for i, p in enumerate(primes):
        others = set().union(*(q.vars for j, q in enumerate(primes) if j != i))
        d.append(len(p.vars - others))
    r = sum(1 for x in d if x)
    if r == 0:
        return _na("thm2.13", "upper", cite, "no minimal prime has a private variable (r = 0)")
    raw = Fraction(2 * n + r - sum(d), 2)
    details = {"d": d, "r": r, "s": len(primes), "n": n}
    key = (n, tuple(tuple(sorted(p.vars)) for p in primes))
    note = ""
    if key in _QUOTED_THM213:
        note = (f"a published example quotes {_QUOTED_THM213[key]} for this ideal; "
                f"the formula evaluates to {raw.numerator}/{raw.denominator}")
    return _ok("thm2.13", "upper", raw, cite, details=details, note=note)


# --- cyclic quotients ------------------------------------------------------

def thm31_value(heights: Sequence[int]) -> int:
    r = list(heights)
    n = sum(r)
    terms = [n - r[0]]
    for i in range(1, len(r)):
        terms.append(sum(ceil(x / 2) for x in r[:i]) + sum(r[i + 1:]))
    return min(terms)


def thm31_lower(heights: Sequence[int]) -> BoundReport:
    """Lower bound for ``sdepth(S/I)``; depends on the order of ``heights``."""
    if not heights or any(h < 1 for h in heights):
        raise ValueError("heights must be positive")
    return _ok("thm3.1", "lower", thm31_value(heights), "Thm 3.1",
               details={"order": list(heights)})


def thm31_best_order(heights: Sequence[int]) -> BoundReport:
    if not heights or any(h < 1 for h in heights):
        raise ValueError("heights must be positive")
    if len(heights) > MAX_ORDER_SEARCH:
        return _na("thm3.1-best", "lower", "Thm 3.1",
                   f"more than {MAX_ORDER_SEARCH} components to order")
    best = max(permutations(heights), key=thm31_value)
    return _ok("thm3.1-best", "lower", thm31_value(best), "Thm 3.1",
               details={"order": list(best)})


def cor34_lower(heights: Sequence[int]) -> BoundReport:
    cite = "Cor 3.4"
    r = list(heights)
    if len(r) < 2:
        return _na("cor3.4", "lower", cite, "needs at least two components")
    if r[0] < r[1] or len(set(r[1:])) != 1:
        return _na("cor3.4", "lower", cite, "heights are not r_1 >= r_2 = ... = r_k")
    value = sum(ceil(x / 2) for x in r[:-1])
    if value > sum(r) - r[0]:
        # only follows from the ordered lower bound when the n - r_1 term is not smaller
        return _na("cor3.4", "lower", cite, "n - r_1 is smaller than the corollary value")
    return _ok("cor3.4", "lower", value, cite)


def cor35_lower(d: int, k: int) -> BoundReport:
    return _ok("cor3.5", "lower", ceil(d / 2) * (k - 1), "Cor 3.5")


def prop38_upper(heights: Sequence[int]) -> BoundReport:
    """Upper bound for ``sdepth(S/I)``, ``I`` an intersection of k >= 3 disjoint primes."""
    cite = "Prop 3.8"
    r = sorted(heights, reverse=True)
    k = len(r)
    if k < 3:
        return _na("prop3.8", "upper", cite, "needs k >= 3 components")
    return _ok("prop3.8", "upper", ceil(r[k - 2] / 2) + sum(r[:k - 2]), cite,
               details={"order": r})


def cor39_bounds(d: int, k: int) -> list[BoundReport]:
    cite = "Cor 3.9"
    if k < 3:
        return [_na("cor3.9", "lower", cite, "needs k >= 3 components"),
                _na("cor3.9", "upper", cite, "needs k >= 3 components")]
    return [_ok("cor3.9", "lower", (k - 1) * ceil(d / 2), cite),
            _ok("cor3.9", "upper", (k - 2) * d + ceil(d / 2), cite)]


# --- aggregation -----------------------------------------------------------

@dataclass
class BoundsSummary:
    kind: Kind
    n: int
    reports: list[BoundReport]
    depth: int | None = None
    decomposition: DecomposedIdeal | None = None

    @property
    def lower(self) -> int:
        vals = [r.value for r in self.reports if r.gives_lower]
        return max(vals, default=0)

    @property
    def upper(self) -> int | None:
        vals = [r.value for r in self.reports if r.gives_upper]
        return min(vals, default=None)

    @property
    def exact(self) -> int | None:
        up = self.upper
        return up if up is not None and up == self.lower else None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "reports": [r.to_json() for r in self.reports],
            "bracket": {"lower": self.lower, "upper": self.upper},
            "exact": self.exact,
        }
        if self.decomposition is not None:
            out["heights"] = list(self.decomposition.heights)
        if self.depth is not None:
            out["depth"] = self.depth
            out["lower_at_least_depth"] = self.lower >= self.depth
        return out


def _order_heights(dec: DecomposedIdeal, order: Sequence[int] | None) -> list[int]:
    heights = list(dec.heights)
    if order is None:
        return heights
    if sorted(order) != list(range(1, dec.k + 1)):
        raise ValueError(f"order must be a permutation of 1..{dec.k}, got {list(order)}")
    return [heights[i - 1] for i in order]


def bounds_report(target: MonomialIdeal | DecomposedIdeal, kind: Kind | str = Kind.IDEAL, *,
                  order: Sequence[int] | None = None, best_order: bool = False) -> BoundsSummary:
    """Evaluate every formula whose hypotheses can be checked for ``target``."""
    kind = Kind(kind)
    if isinstance(target, DecomposedIdeal):
        dec, ideal = target, target.ideal
    else:
        ideal = target
        dec = decompose(ideal)
    reports: list[BoundReport] = []
    depth = None
    usable = dec is not None and dec.irreducible and dec.spans_maximal

    if kind is Kind.IDEAL:
        reports += lemma24_bounds(ideal)
        if dec is not None:
            reports.append(thm26_upper(dec))
            reports += cor28_bounds(dec)
            hs = set(dec.heights)
            if dec.is_prime and dec.spans_maximal and len(hs) == 1:
                reports += cor212_bounds(hs.pop(), dec.k)
        reports.append(thm213_upper(ideal))
        if usable:
            depth = dec.k
    else:
        if usable:
            hs = _order_heights(dec, order)
            reports.append(thm31_lower(hs))
            if best_order:
                reports.append(thm31_best_order(hs))
            reports.append(cor34_lower(hs))
            if len(set(hs)) == 1:
                reports.append(cor35_lower(hs[0], dec.k))
            if dec.is_prime:
                reports.append(prop38_upper(hs))
                if len(set(hs)) == 1:
                    reports += cor39_bounds(hs[0], dec.k)
            else:
                reports.append(_na("prop3.8", "upper", "Prop 3.8", "components are not prime"))
            depth = dec.k - 1
        else:
            why = "ideal is not an intersection of irreducible ideals with disjoint supports"
            if dec is not None:
                why = _decomposition_reason(dec)
            reports.append(_na("thm3.1", "lower", "Thm 3.1", why))
            reports.append(_na("prop3.8", "upper", "Prop 3.8", why))
    return BoundsSummary(kind, ideal.n, reports, depth, dec)


def bracket(ideal: MonomialIdeal, kind: Kind | str = Kind.IDEAL) -> tuple[int, int]:
    """``(lower, upper)`` from every applicable formula; defaults ``(0, n)``."""
    summary = bounds_report(ideal, kind, best_order=Kind(kind) is Kind.QUOTIENT)
    upper = summary.upper
    return summary.lower, ideal.n if upper is None else min(upper, ideal.n)
