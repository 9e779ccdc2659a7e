"""Sets of nonnegative indices stored as sorted, disjoint closed intervals."""

from bisect import bisect_right
from numbers import Integral
from typing import Iterable, Iterator, Sequence

Interval = tuple[int, int]


def _canonical(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    merged: list[list[int]] = []
    for lo, hi in sorted((int(a), int(b)) for a, b in intervals if a <= b):
        lo = max(lo, 0)
        if hi < lo:
            continue
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


class IndexSet:
    """Canonical union of closed intervals [lo, hi] of nonnegative integers.

    Adjacent and overlapping intervals are merged on construction, so two
    sets are equal exactly when their interval tuples are.
    """

    __slots__ = ("intervals", "_starts")

    def __init__(self, intervals: Iterable[Interval] = ()):
        self.intervals = _canonical(intervals)
        self._starts = [lo for lo, _ in self.intervals]

    @classmethod
    def from_points(cls, points: Iterable[int]) -> "IndexSet":
        return cls((p, p) for p in points)

    @classmethod
    def span(cls, lo: int, hi: int) -> "IndexSet":
        """The interval [lo, hi], empty when hi < lo."""
        return cls([(lo, hi)])

    def __contains__(self, index: object) -> bool:
        if not isinstance(index, Integral):
            return False
        index = int(index)
        j = bisect_right(self._starts, index) - 1
        return j >= 0 and index <= self.intervals[j][1]

    def __iter__(self) -> Iterator[int]:
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        body = ", ".join(f"[{lo}, {hi}]" if lo != hi else str(lo) for lo, hi in self.intervals)
        return f"IndexSet({body})"

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.intervals + other.intervals)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        out: list[Interval] = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IndexSet(out)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        out: list[Interval] = []
        for lo, hi in self.intervals:
            cursor = lo
            j = max(bisect_right(other._starts, lo) - 1, 0)
            while j < len(other.intervals) and other.intervals[j][0] <= hi:
                olo, ohi = other.intervals[j]
                if ohi >= cursor:
                    if olo > cursor:
                        out.append((cursor, olo - 1))
                    cursor = max(cursor, ohi + 1)
                j += 1
            if cursor <= hi:
                out.append((cursor, hi))
        return IndexSet(out)

    def isdisjoint(self, other: "IndexSet") -> bool:
        return not (self & other)

    def issubset(self, other: "IndexSet") -> bool:
        return not (self - other)

    def clip(self, lo: int, hi: int) -> "IndexSet":
        """Intersect with [lo, hi]."""
        return self & IndexSet.span(lo, hi)

    @property
    def min(self) -> int:
        if not self.intervals:
            raise ValueError("empty index set has no minimum")
        return self.intervals[0][0]

    @property
    def max(self) -> int:
        if not self.intervals:
            raise ValueError("empty index set has no maximum")
        return self.intervals[-1][1]

    def as_lists(self) -> list[tuple[int, int]]:
        """Interval list for JSON reports."""
        return list(self.intervals)


def union_all(sets: Sequence[IndexSet]) -> IndexSet:
    """Union of any number of index sets."""
    return IndexSet(interval for s in sets for interval in s.intervals)
