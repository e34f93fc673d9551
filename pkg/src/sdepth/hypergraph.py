"""Complete k-partite hypergraph edge ideals and instance generators.

Vertex ``v_j^(i)`` (part i, j-th vertex, both 1-based) is variable
``x_{offset(i) + j}`` with ``offset(i) = d_1 + ... + d_{i-1}``: parts are laid
out left to right.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

from .bounds import DecomposedIdeal
from .monomial import (IrreducibleIdeal, Monomial, MonomialIdeal, PrimeIdeal,
                       ideal_of_irreducible, ideal_of_prime, intersect_all, product_all)


@dataclass(frozen=True)
class KPartiteSpec:
    part_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(d) for d in self.part_sizes)
        if not sizes:
            raise ValueError("need at least one part")
        if any(d < 1 for d in sizes):
            raise ValueError(f"part sizes must be positive, got {list(sizes)}")
        object.__setattr__(self, "part_sizes", sizes)

    @property
    def n(self) -> int:
        return sum(self.part_sizes)

    @property
    def k(self) -> int:
        return len(self.part_sizes)

    def parts(self) -> list[range]:
        out, start = [], 1
        for d in self.part_sizes:
            out.append(range(start, start + d))
            start += d
        return out

    def variable(self, part: int, j: int) -> int:
        """Flat variable index of vertex j of the given part (both 1-based)."""
        return sum(self.part_sizes[: part - 1]) + j

    def label(self) -> str:
        return ",".join(str(d) for d in self.part_sizes)


def build_kpartite(spec: KPartiteSpec | Sequence[int]) -> tuple[list[PrimeIdeal], MonomialIdeal]:
    """The part primes and the edge ideal (their product, equal to their intersection)."""
    if not isinstance(spec, KPartiteSpec):
        spec = KPartiteSpec(tuple(spec))
    n = spec.n
    primes = [PrimeIdeal(n, frozenset(part)) for part in spec.parts()]
    ideals = [ideal_of_prime(p) for p in primes]
    ideal = product_all(ideals)
    if ideal != intersect_all(ideals):
        raise AssertionError("product and intersection of the part primes differ")
    return primes, ideal


def kpartite_decomposition(spec: KPartiteSpec | Sequence[int]) -> DecomposedIdeal:
    primes, _ = build_kpartite(spec)
    return DecomposedIdeal(primes[0].n, tuple(ideal_of_prime(p) for p in primes), True)


def build_irreducible_intersection(
        components: Sequence[IrreducibleIdeal | Mapping[int, int] | MonomialIdeal],
        n: int | None = None) -> tuple[DecomposedIdeal, MonomialIdeal]:
    """Intersect components with pairwise disjoint supports.

    A component may be an :class:`IrreducibleIdeal`, a ``{variable: exponent}``
    map, or an arbitrary :class:`MonomialIdeal`; any of the latter marks the
    decomposition as not irreducible.
    """
    if not components:
        raise ValueError("need at least one component")
    if n is None:
        n = max(_ring_size(c) for c in components)
    ideals = []
    irreducible = True
    for c in components:
        if isinstance(c, MonomialIdeal):
            if c.n != n:
                raise ValueError("component lives in a different ring")
            ideals.append(c)
            irreducible &= all(len(g.support()) == 1 for g in c.gens)
        else:
            q = c if isinstance(c, IrreducibleIdeal) else IrreducibleIdeal(n, c)
            if q.n != n:
                q = IrreducibleIdeal(n, dict(q.powers))
            ideals.append(ideal_of_irreducible(q))
    dec = DecomposedIdeal(n, tuple(ideals), irreducible)
    return dec, dec.ideal


def _ring_size(c) -> int:
    if isinstance(c, (MonomialIdeal, IrreducibleIdeal)):
        return c.n
    return max(c)


# --- enumeration -----------------------------------------------------------

def _partitions(n: int, k: int, smallest: int = 1) -> Iterator[tuple[int, ...]]:
    """Nondecreasing k-tuples of positive integers summing to n."""
    if k == 1:
        if n >= smallest:
            yield (n,)
        return
    for first in range(smallest, n // k + 1):
        for rest in _partitions(n - first, k - 1, first):
            yield (first,) + rest


def enumerate_kpartite(max_n: int, ks: Sequence[int] | None = None,
                       min_n: int = 1) -> Iterator[KPartiteSpec]:
    """Part-size tuples up to permutation, ordered by n, then k, then lexicographically."""
    if max_n > 10:
        raise ValueError("max_n is capped at 10")
    for n in range(min_n, max_n + 1):
        for k in range(1, n + 1):
            if ks is not None and k not in ks:
                continue
            for sizes in _partitions(n, k):
                yield KPartiteSpec(sizes)


def enumerate_irreducible(max_n: int, max_exp: int, max_k: int,
                          full: bool = False) -> Iterator[tuple[DecomposedIdeal, MonomialIdeal]]:
    """Intersections of pure-power ideals on consecutive disjoint blocks of variables.

    Blocks are laid out from ``x1``; unless ``full`` is set the blocks may
    leave trailing variables unused. Every exponent pattern up to ``max_exp``
    is produced.
    """
    if max_n > 10:
        raise ValueError("max_n is capped at 10")
    for n in range(1, max_n + 1):
        for k in range(1, min(max_k, n) + 1):
            for used in range(k, n + 1):
                if full and used != n:
                    continue
                for sizes in _compositions(used, k):
                    for exps in product(range(1, max_exp + 1), repeat=used):
                        comps, start = [], 1
                        for d in sizes:
                            comps.append(IrreducibleIdeal(n, {start + j: exps[start - 1 + j]
                                                              for j in range(d)}))
                            start += d
                        yield build_irreducible_intersection(comps, n)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def enumerate_instances(max_n: int, kinds: Sequence[str] = ("kpartite",), *,
                        ks: Sequence[int] | None = None, max_exp: int = 2,
                        max_k: int = 2) -> Iterator[MonomialIdeal]:
    """Stream ideals of the requested families: ``"kpartite"`` and/or ``"irreducible"``."""
    for kind in kinds:
        if kind == "kpartite":
            for spec in enumerate_kpartite(max_n, ks):
                yield build_kpartite(spec)[1]
        elif kind == "irreducible":
            for _, ideal in enumerate_irreducible(max_n, max_exp, max_k):
                yield ideal
        else:
            raise ValueError(f"unknown instance family {kind!r}")


@dataclass(frozen=True)
class RandomParams:
    n: int = 4
    max_exp: int = 2
    max_gens: int = 4
    family: str = "monomial"  # or "irreducible"
    max_k: int = 3


def random_instance(seed: int, params: RandomParams = RandomParams()):
    """Reproducible random instance.

    ``family="monomial"`` gives a MonomialIdeal with up to ``max_gens``
    generators; ``family="irreducible"`` gives ``(DecomposedIdeal, MonomialIdeal)``
    with disjoint random supports.
    """
    rng = random.Random(seed)
    n = params.n
    if params.family == "monomial":
        possible = (params.max_exp + 1) ** n - 1
        count = min(rng.randint(1, params.max_gens), possible)
        gens = set()
        while len(gens) < count:
            e = tuple(rng.randint(0, params.max_exp) for _ in range(n))
            if any(e):
                gens.add(Monomial(e))
        return MonomialIdeal(n, tuple(gens))
    if params.family == "irreducible":
        variables = list(range(1, n + 1))
        rng.shuffle(variables)
        k = rng.randint(1, min(params.max_k, n))
        used = rng.randint(k, n)
        cuts = sorted(rng.sample(range(1, used), k - 1))
        blocks = [variables[a:b] for a, b in zip([0] + cuts, cuts + [used])]
        comps = [IrreducibleIdeal(n, {j: rng.randint(1, params.max_exp) for j in block})
                 for block in blocks]
        return build_irreducible_intersection(comps, n)
    raise ValueError(f"unknown family {params.family!r}")


def chained_primes(n_blocks: int = 4, block: int = 9) -> MonomialIdeal:
    """``(x1..x_b) ∩ (x_b..x_2b) ∩ ...``: consecutive primes sharing one endpoint."""
    primes = []
    start = 1
    for i in range(n_blocks):
        stop = block if i == 0 else start + block
        primes.append(range(start, stop + 1))
        start = stop
    n = start
    return intersect_all(ideal_of_prime(PrimeIdeal(n, frozenset(p))) for p in primes)


__all__ = [
    "KPartiteSpec", "build_kpartite", "kpartite_decomposition", "build_irreducible_intersection",
    "enumerate_kpartite", "enumerate_irreducible", "enumerate_instances", "RandomParams",
    "random_instance", "chained_primes",
]
