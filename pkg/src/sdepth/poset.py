"""Characteristic posets inside the box ``[0, g]`` and interval partitions of them.

Points of the box are encoded as mixed-radix integers with radices ``g_j + 1``,
most significant coordinate first, which is exactly numpy's C order for an
array of shape ``g + 1``. Membership is a boolean array over these codes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Sequence

import numpy as np

from .monomial import Monomial, MonomialIdeal

DEFAULT_MAX_POINTS = 2**24

Point = tuple[int, ...]


class Kind(str, enum.Enum):
    IDEAL = "ideal"
    QUOTIENT = "quotient"


class PosetTooLarge(ValueError):
    pass


class PartitionError(ValueError):
    """A proposed interval partition does not partition the poset.

    ``reason`` is one of ``"uncovered point"``, ``"overlap"``,
    ``"point outside poset"`` or ``"malformed interval"``.
    """

    def __init__(self, reason: str, point: Point | None, detail: str = ""):
        self.reason = reason
        self.point = point
        msg = reason if point is None else f"{reason} {list(point)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


@dataclass(frozen=True)
class Box:
    g: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(int(x) for x in self.g))
        if any(x < 0 for x in self.g):
            raise ValueError("box corner must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.g)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.g)

    @property
    def size(self) -> int:
        out = 1
        for x in self.g:
            out *= x + 1
        return out

    def encode(self, point: Sequence[int]) -> int:
        code = 0
        for c, r in zip(point, self.shape):
            code = code * r + c
        return code

    def decode(self, code: int) -> Point:
        coords = []
        for r in reversed(self.shape):
            code, c = divmod(code, r)
            coords.append(c)
        return tuple(reversed(coords))

    def contains(self, point: Sequence[int]) -> bool:
        return len(point) == self.n and all(0 <= c <= x for c, x in zip(point, self.g))

    def rho_array(self) -> np.ndarray:
        """ρ of every box point, flattened in code order."""
        if self.n == 0:
            return np.zeros(1, dtype=np.int16)
        grids = np.indices(self.shape, dtype=np.int32)
        hits = sum((grids[j] == self.g[j]).astype(np.int16) for j in range(self.n))
        return np.asarray(hits, dtype=np.int16).ravel()


def rho(d: Sequence[int], box: Box | Sequence[int]) -> int:
    g = box.g if isinstance(box, Box) else tuple(box)
    if len(d) != len(g) or any(not 0 <= a <= b for a, b in zip(d, g)):
        raise ValueError(f"point {list(d)} is not in the box below {list(g)}")
    return sum(1 for a, b in zip(d, g) if a == b)


@dataclass(frozen=True)
class Interval:
    bottom: Point
    top: Point

    def __post_init__(self):
        object.__setattr__(self, "bottom", tuple(int(x) for x in self.bottom))
        object.__setattr__(self, "top", tuple(int(x) for x in self.top))
        if len(self.bottom) != len(self.top):
            raise ValueError("interval ends have different lengths")
        if any(a > b for a, b in zip(self.bottom, self.top)):
            raise ValueError(f"bottom {list(self.bottom)} is not below top {list(self.top)}")

    def slices(self) -> tuple[slice, ...]:
        return tuple(slice(a, b + 1) for a, b in zip(self.bottom, self.top))

    def points(self) -> Iterable[Point]:
        return _cartesian(*(range(a, b + 1) for a, b in zip(self.bottom, self.top)))

    def __len__(self) -> int:
        out = 1
        for a, b in zip(self.bottom, self.top):
            out *= b - a + 1
        return out


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def to_json(self) -> dict:
        return {"intervals": [{"from": list(iv.bottom), "to": list(iv.top)} for iv in self.intervals]}

    @classmethod
    def from_json(cls, data: dict) -> IntervalPartition:
        try:
            rows = data["intervals"]
            return cls(tuple(Interval(tuple(r["from"]), tuple(r["to"])) for r in rows))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed partition JSON: {exc}") from exc


@dataclass(frozen=True, eq=False)
class CharPoset:
    box: Box
    kind: Kind
    members: np.ndarray  # bool, flattened in code order
    source: MonomialIdeal

    @property
    def n(self) -> int:
        return self.box.n

    def __len__(self) -> int:
        return int(self.members.sum())

    def __contains__(self, point: Sequence[int]) -> bool:
        return self.box.contains(point) and bool(self.members[self.box.encode(point)])

    def points(self) -> list[Point]:
        """Members in the linear extension: total degree, then code."""
        codes = np.flatnonzero(self.members)
        pts = [self.box.decode(int(c)) for c in codes]
        pts.sort(key=lambda p: (sum(p), self.box.encode(p)))
        return pts

    def member_grid(self) -> np.ndarray:
        return self.members.reshape(self.box.shape)


def char_poset(ideal: MonomialIdeal, kind: Kind | str = Kind.IDEAL, *,
               g: Sequence[int] | None = None,
               max_points: int = DEFAULT_MAX_POINTS) -> CharPoset:
    kind = Kind(kind)
    box = Box(ideal.gmax if g is None else tuple(g))
    if any(a > b for gen in ideal.gens for a, b in zip(gen.exponents, box.g)):
        raise ValueError("box must contain every generator")
    if box.size > max_points:
        raise PosetTooLarge(f"box has {box.size} points, cap is {max_points}")
    grid = np.zeros(box.shape, dtype=bool)
    for gen in ideal.gens:
        grid[tuple(slice(a, None) for a in gen.exponents)] = True
    if kind is Kind.QUOTIENT:
        grid = ~grid
    members = grid.ravel()
    members.setflags(write=False)
    return CharPoset(box, kind, members, ideal)


def partition_sdepth(poset: CharPoset, partition: IntervalPartition) -> int:
    """Minimum ρ over the interval tops, after checking the partition."""
    check_partition(poset, partition)
    if not partition.intervals:
        raise PartitionError("uncovered point", None, "empty partition")
    return min(rho(iv.top, poset.box) for iv in partition.intervals)


def check_partition(poset: CharPoset, partition: IntervalPartition) -> None:
    """Raise PartitionError naming the first offending point, if any."""
    box = poset.box
    grid = poset.member_grid()
    counts = np.zeros(box.shape, dtype=np.int32)
    for iv in partition.intervals:
        if len(iv.bottom) != box.n:
            raise PartitionError("malformed interval", iv.bottom, f"expected {box.n} coordinates")
        for end in (iv.bottom, iv.top):
            if not box.contains(end):
                raise PartitionError("point outside poset", end, "outside the box")
        block = grid[iv.slices()]
        if not block.all():
            offset = np.argwhere(~block)[0]
            bad = tuple(int(a + o) for a, o in zip(iv.bottom, offset))
            raise PartitionError("point outside poset", bad)
        counts[iv.slices()] += 1
    flat = counts.ravel()
    over = np.flatnonzero(flat > 1)
    if over.size:
        raise PartitionError("overlap", _first_in_order(box, over))
    missing = np.flatnonzero(poset.members & (flat == 0))
    if missing.size:
        raise PartitionError("uncovered point", _first_in_order(box, missing))


def _first_in_order(box: Box, codes: np.ndarray) -> Point:
    pts = [box.decode(int(c)) for c in codes]
    return min(pts, key=lambda p: (sum(p), box.encode(p)))


def to_stanley_decomposition(poset: CharPoset, partition: IntervalPartition
                             ) -> list[tuple[Monomial, frozenset[int]]]:
    """Map each interval [c, d] to the Stanley space ``x^c K[Z]`` with Z = {x_j : d_j = g_j}."""
    check_partition(poset, partition)
    g = poset.box.g
    out = []
    for iv in partition.intervals:
        z = frozenset(j for j, (a, b) in enumerate(zip(iv.top, g), start=1) if a == b)
        out.append((Monomial(iv.bottom), z))
    return out
