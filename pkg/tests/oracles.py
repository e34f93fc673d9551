"""Slow, independent reference implementations used only by the tests.

Nothing here imports the poset or solver modules: membership is decided by
divisibility on raw exponent tuples and partitions are enumerated exhaustively.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product


def gmax(gens):
    return tuple(max(col) for col in zip(*gens))


def in_ideal(point, gens):
    return any(all(p >= e for p, e in zip(point, g)) for g in gens)


def poset_points(n, gens, quotient=False):
    """Points of the box [0, g] in (quotient: not in) the ideal, sorted by degree."""
    g = gmax(gens)
    pts = [c for c in product(*(range(x + 1) for x in g)) if in_ideal(c, gens) != quotient]
    return g, sorted(pts, key=lambda c: (sum(c), c))


def rho(point, g):
    return sum(1 for p, x in zip(point, g) if p == x)


def brute_sdepth(n, gens, quotient=False):
    """Maximum over all interval partitions of the minimum ρ of the tops.

    The smallest uncovered point (in a linear extension) must be the bottom of
    its interval, so branching on its top enumerates every partition once.
    """
    g, pts = poset_points(n, gens, quotient)
    if not pts:
        raise ValueError("empty poset")
    members = frozenset(pts)
    index = {p: i for i, p in enumerate(pts)}

    def interval(lo, hi):
        return [c for c in product(*(range(a, b + 1) for a, b in zip(lo, hi)))]

    tops = {}
    for p in pts:
        options = []
        for q in pts:
            if all(a <= b for a, b in zip(p, q)):
                cells = interval(p, q)
                if all(c in members for c in cells):
                    mask = 0
                    for c in cells:
                        mask |= 1 << index[c]
                    options.append((rho(q, g), mask))
        tops[p] = options

    full = (1 << len(pts)) - 1

    @lru_cache(maxsize=None)
    def best(covered):
        if covered == full:
            return n + 1
        i = (~covered & (covered + 1)).bit_length() - 1
        value = -1
        for r, mask in tops[pts[i]]:
            if r <= value or covered & mask:
                continue
            value = max(value, min(r, best(covered | mask)))
        return value

    return best(0)


def squarefree_count(n, gens, t):
    """Number of t-subsets of the variables whose squarefree monomial lies in the ideal."""
    count = 0
    for subset in combinations(range(n), t):
        point = tuple(1 if j in subset else 0 for j in range(n))
        count += in_ideal(point, gens)
    return count


def brute_min_transversals(n, edges):
    """All inclusion-minimal subsets of 1..n meeting every edge (edges are sets)."""
    hits = []
    for size in range(n + 1):
        for subset in combinations(range(1, n + 1), size):
            s = set(subset)
            if all(s & e for e in edges) and not any(h <= s for h in hits):
                hits.append(s)
    return sorted(tuple(sorted(h)) for h in hits)
