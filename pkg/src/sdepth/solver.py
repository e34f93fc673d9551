"""Exact Stanley depth by exhaustive interval-partition search.

``decide(P, k)`` asks for a partition of P into intervals whose tops all have
ρ >= k. Three reductions keep the search small without losing completeness:

* points with ρ >= k may stay singletons, so only points with ρ < k must be
  covered by "real" intervals;
* an interval with top ρ > k restricted to the ρ <= k part splits into
  intervals with top ρ == k, and a coordinate that does not reach g can be
  split into one interval per value, so candidate tops are ``c`` with exactly
  ``k - ρ(c)`` non-saturated coordinates raised to g;
* the minimum uncovered point (in any linear extension) must be the bottom of
  the interval covering it, which is why only mandatory points need rows.

What remains is an exact cover problem (mandatory points are primary columns,
ρ == k points are secondary) solved with Algorithm X on dict-of-sets. When
the box is 0/1 the per-level point counts also force how many intervals start
at every level; a negative count prunes the branch.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .monomial import MonomialIdeal
from .poset import (CharPoset, Interval, IntervalPartition, Kind, char_poset,
                    check_partition, partition_sdepth, DEFAULT_MAX_POINTS)

log = logging.getLogger(__name__)


class BudgetExhausted(RuntimeError):
    pass


class ContradictoryBounds(AssertionError):
    """The search disagrees with a closed-form bound. Always a bug somewhere."""


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed: float = 0.0
    decisions: list[tuple[int, bool]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "nodes": self.nodes,
            "elapsed_ms": int(round(self.elapsed * 1000)),
            "decisions": [{"k": k, "found": found} for k, found in self.decisions],
        }


@dataclass
class SdepthResult:
    value: int
    certificate: IntervalPartition
    stats: SearchStats
    kind: Kind
    bracket: tuple[int, int]


@dataclass
class _Budget:
    nodes: int | None = None
    seconds: float | None = None
    started: float = field(default_factory=time.monotonic)
    used: int = 0

    def tick(self) -> None:
        self.used += 1
        if self.nodes is not None and self.used > self.nodes:
            raise BudgetExhausted(f"node budget of {self.nodes} exhausted")
        if self.seconds is not None and self.used % 1024 == 0:
            if time.monotonic() - self.started > self.seconds:
                raise BudgetExhausted(f"time budget of {self.seconds}s exhausted")


@dataclass
class _CoverProblem:
    k: int
    rows: list[tuple[int, int]]        # (bottom code, top code) per row
    row_cols: list[tuple[int, ...]]    # point codes covered by each row
    primary: list[int]                 # mandatory point codes
    level: dict[int, int] | None       # ρ of each column, when counting applies
    level_counts: list[int] | None     # uncovered points per ρ level 0..k


def _build_problem(poset: CharPoset, k: int) -> _CoverProblem:
    box = poset.box
    g = box.g
    n = box.n
    rho = box.rho_array()
    members = poset.members
    mandatory = np.flatnonzero(members & (rho < k))
    codes = np.arange(box.size, dtype=np.int64).reshape(box.shape)
    quotient = poset.kind is Kind.QUOTIENT

    rows = []
    for c_code in mandatory:
        c = box.decode(int(c_code))
        need = k - int(rho[c_code])
        open_coords = [j for j in range(n) if c[j] < g[j]]
        for chosen in combinations(open_coords, need):
            d = list(c)
            for j in chosen:
                d[j] = g[j]
            d_code = box.encode(d)
            if quotient and not members[d_code]:
                continue
            block = codes[tuple(slice(c[j], d[j] + 1) for j in range(n))]
            pts = tuple(int(x) for x in block.ravel())
            rows.append((len(pts), int(c_code), d_code, pts))
    # smallest interval first, then canonical codes
    rows.sort(key=lambda r: (r[0], r[1], r[2]))

    level = level_counts = None
    if all(x <= 1 for x in g):
        cols = set(int(c) for c in mandatory)
        for r in rows:
            cols.update(r[3])
        level = {c: int(rho[c]) for c in cols}
        level_counts = [0] * (k + 1)
        for c in cols:
            level_counts[level[c]] += 1
        # every uncovered ρ == k member is a potential top
        level_counts[k] = int((members & (rho == k)).sum())

    return _CoverProblem(
        k=k,
        rows=[(r[1], r[2]) for r in rows],
        row_cols=[r[3] for r in rows],
        primary=[int(c) for c in mandatory],
        level=level,
        level_counts=level_counts,
    )


def _counts_feasible(counts: list[int], k: int) -> bool:
    # Remaining intervals all have top level k and cover every uncovered point
    # below level k exactly once; an interval starting at level i covers
    # C(k-i, j-i) points of level j. That fixes the number starting at each level.
    starts = []
    total = 0
    for j in range(k):
        b = counts[j] - sum(bi * comb(k - i, j - i) for i, bi in starts)
        if b < 0:
            return False
        if b:
            starts.append((j, b))
            total += b
    return total <= counts[k]


class _Search:
    """Algorithm X over dict-of-sets, with an explicit stack."""

    def __init__(self, problem: _CoverProblem, budget: _Budget):
        self.p = problem
        self.budget = budget
        self.X: dict[int, set[int]] = {}
        for r, cols in enumerate(problem.row_cols):
            for c in cols:
                self.X.setdefault(c, set()).add(r)
        for c in problem.primary:
            self.X.setdefault(c, set())
        self.Y = problem.row_cols
        self.primary = frozenset(problem.primary)
        self.open_primary = set(problem.primary)
        self.counts = list(problem.level_counts) if problem.level_counts is not None else None

    def _select(self, r: int) -> list[set[int]]:
        X, Y = self.X, self.Y
        removed = []
        for j in Y[r]:
            for i in X[j]:
                for c in Y[i]:
                    if c != j:
                        X[c].discard(i)
            removed.append(X.pop(j))
        for j in Y[r]:
            self.open_primary.discard(j)
        if self.counts is not None:
            for j in Y[r]:
                self.counts[self.p.level[j]] -= 1
        return removed

    def _deselect(self, r: int, removed: list[set[int]]) -> None:
        X, Y = self.X, self.Y
        for j in reversed(Y[r]):
            X[j] = removed.pop()
            for i in X[j]:
                for c in Y[i]:
                    if c != j:
                        X[c].add(i)
        primary = self.primary
        for j in Y[r]:
            if j in primary:
                self.open_primary.add(j)
        if self.counts is not None:
            for j in Y[r]:
                self.counts[self.p.level[j]] += 1

    def _choose(self) -> list[int]:
        c = min(self.open_primary, key=lambda c: (len(self.X[c]), c))
        return sorted(self.X[c])

    def _pruned(self) -> bool:
        return self.counts is not None and not _counts_feasible(self.counts, self.p.k)

    def root_candidates(self) -> list[int] | None:
        if not self.open_primary:
            return []
        if self._pruned():
            return None
        return self._choose()

    def run(self, forced: int | None = None) -> list[int] | None:
        if not self.open_primary:
            return []
        if self._pruned():
            return None
        chosen: list[int] = []
        # frame: [candidates, next position, selected row, removed columns]
        if forced is not None:
            frames = [[[forced], 0, None, None]]
        else:
            frames = [[self._choose(), 0, None, None]]
        while frames:
            f = frames[-1]
            if f[2] is not None:
                self._deselect(f[2], f[3])
                chosen.pop()
                f[2] = f[3] = None
            if f[1] == len(f[0]):
                frames.pop()
                continue
            r = f[0][f[1]]
            f[1] += 1
            self.budget.tick()
            f[3] = self._select(r)
            f[2] = r
            chosen.append(r)
            if not self.open_primary:
                return list(chosen)
            if self._pruned():
                continue
            cands = self._choose()
            if cands:
                frames.append([cands, 0, None, None])
        return None


def _solve_branch(problem: _CoverProblem, forced: int, nodes: int | None, seconds: float | None):
    budget = _Budget(nodes, seconds)
    sol = _Search(problem, budget).run(forced)
    return sol, budget.used


def _assemble(poset: CharPoset, problem: _CoverProblem, solution: list[int]) -> IntervalPartition:
    box = poset.box
    covered = np.zeros(box.size, dtype=bool)
    intervals = []
    for r in solution:
        c_code, d_code = problem.rows[r]
        intervals.append(Interval(box.decode(c_code), box.decode(d_code)))
        covered[list(problem.row_cols[r])] = True
    for code in np.flatnonzero(poset.members & ~covered):
        p = box.decode(int(code))
        intervals.append(Interval(p, p))
    intervals.sort(key=lambda iv: (sum(iv.bottom), box.encode(iv.bottom), box.encode(iv.top)))
    return IntervalPartition(tuple(intervals))


def decide(poset: CharPoset, k: int, *, node_budget: int | None = None,
           time_budget: float | None = None, threads: int = 1,
           stats: SearchStats | None = None) -> IntervalPartition | None:
    """A partition of ``poset`` with every top at ρ >= k, or None if there is none.

    Raises BudgetExhausted instead of guessing when a budget runs out. With
    ``threads > 1`` the root branches are searched in worker processes; the
    returned partition is the one the serial search would return.
    """
    if not 0 <= k <= poset.n:
        raise ValueError(f"k={k} outside 0..{poset.n}")
    stats = stats if stats is not None else SearchStats()
    t0 = time.monotonic()
    problem = _build_problem(poset, k)
    budget = _Budget(node_budget, time_budget)
    search = _Search(problem, budget)
    try:
        if threads <= 1:
            solution = search.run()
        else:
            solution = _parallel(search, problem, budget, threads)
    finally:
        stats.nodes += budget.used
        stats.elapsed += time.monotonic() - t0
    stats.decisions.append((k, solution is not None))
    if solution is None:
        return None
    part = _assemble(poset, problem, solution)
    log.debug("decide k=%d: %d intervals, %d nodes", k, len(part), budget.used)
    return part


def _parallel(search: _Search, problem: _CoverProblem, budget: _Budget, threads: int):
    roots = search.root_candidates()
    if roots is None:
        return None
    if not roots:
        return [] if not search.open_primary else None
    remaining = None
    if budget.seconds is not None:
        remaining = max(0.0, budget.seconds - (time.monotonic() - budget.started))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_solve_branch, problem, r, budget.nodes, remaining) for r in roots]
        try:
            for fut in futures:
                sol, used = fut.result()
                budget.used += used
                if sol is not None:
                    return sol
        finally:
            for fut in futures:
                fut.cancel()
    return None


def verify(poset: CharPoset, partition: IntervalPartition) -> int:
    """Partition Stanley depth; raises PartitionError on an invalid partition."""
    return partition_sdepth(poset, partition)


def _max_top_rho(poset: CharPoset) -> int:
    # every interval containing a minimal point tops out at some member
    rho = poset.box.rho_array()
    return int(rho[poset.members].max())


def exact_sdepth(ideal: MonomialIdeal, kind: Kind | str = Kind.IDEAL, *,
                 node_budget: int | None = None, time_budget: float | None = None,
                 threads: int = 1, use_bounds: bool = True,
                 max_points: int = DEFAULT_MAX_POINTS) -> SdepthResult:
    """Stanley depth of ``I`` (kind="ideal") or ``S/I`` (kind="quotient").

    The value is certified from both sides: the certificate achieves it and a
    failed decision at value + 1 rules out anything better (or value + 1 is
    above every possible top).
    """
    from .bounds import bracket

    kind = Kind(kind)
    poset = char_poset(ideal, kind, max_points=max_points)
    stats = SearchStats()
    lower, upper = bracket(ideal, kind) if use_bounds else (0, ideal.n)
    cap = min(_max_top_rho(poset), ideal.n)
    start = min(upper, cap)

    found = None
    k = start
    while k >= 0:
        part = decide(poset, k, node_budget=node_budget, time_budget=time_budget,
                      threads=threads, stats=stats)
        if part is not None:
            found = (k, part)
            break
        k -= 1
    if found is None:
        raise ContradictoryBounds("no partition found even at k=0")
    value, part = found
    if value == start and value + 1 <= cap:
        better = decide(poset, value + 1, node_budget=node_budget, time_budget=time_budget,
                        threads=threads, stats=stats)
        if better is not None:
            raise ContradictoryBounds(
                f"found a partition at k={value + 1} above the upper bound {upper}")
    if value < lower:
        raise ContradictoryBounds(f"exact value {value} below the lower bound {lower}")
    check_partition(poset, part)
    return SdepthResult(value, part, stats, kind, (lower, upper))
