"""Linear algebra over F2 with Python ints as bitset rows."""

from __future__ import annotations

from typing import Iterable


class Echelon:
    """Incremental row echelon form keyed by lowest set bit."""

    def __init__(self):
        self.pivots: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            low = v & -v
            row = pivots.get(low)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True when it was independent."""
        v = self.reduce(v)
        if v:
            self.pivots[v & -v] = v
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


class HighEchelon:
    """Echelon form keyed by the highest set bit.

    With coordinates ordered by a filtration, the rows whose leading bit is
    at most ``k`` span the intersection of the row space with the span of
    coordinates ``0..k``.
    """

    def __init__(self):
        self.pivots: dict[int, int] = {}

    def add(self, v: int) -> int:
        """Insert ``v``; return its leading bit index, or -1 if dependent."""
        pivots = self.pivots
        while v:
            top = v.bit_length() - 1
            row = pivots.get(top)
            if row is None:
                pivots[top] = v
                return top
            v ^= row
        return -1


def rank(rows: Iterable[int]) -> int:
    ech = Echelon()
    for v in rows:
        ech.add(v)
    return ech.rank


def in_span(v: int, rows: Iterable[int]) -> bool:
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.reduce(v) == 0


def solve(target: int, columns: list[int]) -> int | None:
    """Find a subset of ``columns`` (as a bitmask over their indices) summing to ``target``.

    Returns None when ``target`` is not in their span.
    """
    pivots: dict[int, tuple[int, int]] = {}
    for i, col in enumerate(columns):
        v, combo = col, 1 << i
        while v:
            low = v & -v
            hit = pivots.get(low)
            if hit is None:
                pivots[low] = (v, combo)
                break
            v ^= hit[0]
            combo ^= hit[1]
    v, combo = target, 0
    while v:
        low = v & -v
        hit = pivots.get(low)
        if hit is None:
            return None
        v ^= hit[0]
        combo ^= hit[1]
    return combo
