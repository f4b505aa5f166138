"""The fully blocked grid chain complex over F2 and its bigraded homology.

States are permutations ``sigma`` with ``sigma[c]`` the row of the lattice
point on vertical line ``c``; all states of a size-n grid are held as an
``(n!, n)`` array in lexicographic order, so a state's index is its
lexicographic rank.

Gradings use the planar lattice counts

    M_O(x) = J(x, x) - 2 J(x, O) + J(O, O) + 1,    2A = M_O - M_X - (n - 1)

with ``J`` the symmetrized count of pairs lying strictly south-west of one
another, computed in the fundamental domain ``[0, n)^2``.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator

import numpy as np

from . import f2
from .grid import GridDiagram, check

DEFAULT_CAP = 9


class CapacityError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Bigrading:
    maslov: int
    alexander2: int

    @property
    def alexander(self) -> float:
        return self.alexander2 / 2


def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if n > cap:
        raise CapacityError(f"grid size {n} exceeds capacity {cap} ({math.factorial(n)} states)")


def enumerate_states(n: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """All n! states in lexicographic order."""
    if n < 1:
        raise ValueError("grid size must be positive")
    _check_cap(n, cap)
    return permutations(range(n))


@lru_cache(maxsize=4)
def state_array(n: int) -> np.ndarray:
    arr = np.array(list(permutations(range(n))), dtype=np.int16).reshape(-1, n)
    arr.setflags(write=False)
    return arr


def perm_rank(arr: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each row of a 2-D array of permutations."""
    arr = np.asarray(arr)
    n = arr.shape[1]
    rank = np.zeros(arr.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (arr[:, i + 1:] < arr[:, i:i + 1]).sum(axis=1)
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def state_index(s) -> int:
    return int(perm_rank(np.asarray([s]))[0])


def _sw_pairs(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """2J(P, Q) for lattice states P (rows, integer points) and markings Q (half-integer)."""
    n = p.shape[1]
    total = np.zeros(p.shape[0], dtype=np.int64)
    for c in range(n):
        pc = p[:, c:c + 1]
        # I(P, Q): c <= c' and p[c] <= q[c']
        total += (pc <= q[None, c:]).sum(axis=1)
        # I(Q, P): c' < c and q[c'] < p[c]
        total += (q[None, :c] < pc).sum(axis=1)
    return total


def _self_pairs(p: np.ndarray) -> np.ndarray:
    n = p.shape[1]
    total = np.zeros(p.shape[0], dtype=np.int64)
    for c in range(n - 1):
        total += (p[:, c + 1:] > p[:, c:c + 1]).sum(axis=1)
    return total


def _marking_self(q) -> int:
    n = len(q)
    return sum(1 for i in range(n) for j in range(i + 1, n) if q[i] < q[j])


def maslov_array(states: np.ndarray, marks) -> np.ndarray:
    q = np.asarray(marks, dtype=np.int16)
    return _self_pairs(states) - _sw_pairs(states, q) + _marking_self(marks) + 1


def gradings(d: GridDiagram, states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Maslov grading and twice the Alexander grading of each state row."""
    states = np.asarray(states, dtype=np.int16).reshape(-1, d.n)
    m_o = maslov_array(states, d.o)
    m_x = maslov_array(states, d.x)
    return m_o, m_o - m_x - (d.n - 1)


def bigrading(d: GridDiagram, s) -> Bigrading:
    if len(s) != d.n:
        raise ValueError(f"state has size {len(s)}, grid has size {d.n}")
    m, a2 = gradings(d, np.asarray([s]))
    return Bigrading(int(m[0]), int(a2[0]))


def rectangle_moves(d: GridDiagram, states: np.ndarray, allow_x: bool = False):
    """Empty rectangles out of every state row.

    Returns ``(src, targets, n_x)``: row index of the source, the target
    states as an array, and the number of X's inside (always 0 unless
    ``allow_x``).  Rectangles never contain O's or state points.
    """
    n = d.n
    S = np.asarray(states, dtype=np.int16).reshape(-1, n)
    o = np.asarray(d.o, dtype=np.int16)
    x = np.asarray(d.x, dtype=np.int16)
    srcs, tgts, nxs = [], [], []
    for a in range(n):
        sa = S[:, a]
        for w in range(1, n):
            b = (a + w) % n
            h = (S[:, b] - sa) % n
            ok = np.ones(len(S), dtype=bool)
            for k in range(1, w):
                dd = (S[:, (a + k) % n] - sa) % n
                ok &= ~((dd > 0) & (dd < h))
            count = np.zeros(len(S), dtype=np.int16)
            for k in range(w):
                c = (a + k) % n
                ok &= ((o[c] - sa) % n) >= h
                inside = ((x[c] - sa) % n) < h
                if allow_x:
                    count += inside
                else:
                    ok &= ~inside
            idx = np.nonzero(ok)[0]
            if not len(idx):
                continue
            T = S[idx].copy()
            T[:, a] = S[idx, b]
            T[:, b] = S[idx, a]
            srcs.append(idx)
            tgts.append(T)
            nxs.append(count[idx])
    if not srcs:
        return (np.zeros(0, dtype=np.int64), np.zeros((0, n), dtype=np.int16),
                np.zeros(0, dtype=np.int64))
    return np.concatenate(srcs), np.concatenate(tgts), np.concatenate(nxs).astype(np.int64)


def _flip_rows(d: GridDiagram) -> GridDiagram:
    n = d.n
    return GridDiagram(n, tuple(n - 1 - r for r in d.o), tuple(n - 1 - r for r in d.x))


def incoming_moves(d: GridDiagram, states: np.ndarray):
    """Empty rectangles (avoiding all markings) ending at every state row.

    Reflecting the rows turns a rectangle into ``z`` into one out of the
    reflected ``z``; lattice row ``r`` goes to ``-r mod n``.
    """
    n = d.n
    S = (-np.asarray(states, dtype=np.int16)) % n
    src, T, _ = rectangle_moves(_flip_rows(d), S)
    return src, ((-T) % n).astype(np.int16)


def rectangles(d: GridDiagram, states: np.ndarray, allow_x: bool = False):
    """Like ``rectangle_moves`` with targets given by lexicographic rank."""
    src, T, nx = rectangle_moves(d, states, allow_x)
    return src, perm_rank(T), nx


@dataclass
class GridComplex:
    """Generators with bigradings and the sparse F2 boundary as an edge list."""

    d: GridDiagram
    maslov: np.ndarray
    alexander2: np.ndarray
    src: np.ndarray
    dst: np.ndarray

    def boundary(self, i: int) -> list[int]:
        return [int(t) for t in self.dst[self.src == i]]

    def edge_parity(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = defaultdict(int)
        for s, t in zip(self.src.tolist(), self.dst.tolist()):
            counts[(s, t)] ^= 1
        return {k: v for k, v in counts.items() if v}


def differential(d: GridDiagram, cap: int | None = None) -> GridComplex:
    check(d)
    _check_cap(d.n, cap)
    S = state_array(d.n)
    m, a2 = gradings(d, S)
    src, dst, _ = rectangles(d, S)
    return GridComplex(d, m, a2, src, dst)


def boundary_squared_is_zero(cx: GridComplex) -> bool:
    """Check that the F2 boundary composed with itself vanishes."""
    out: dict[int, set[int]] = defaultdict(set)
    for s, t in cx.edge_parity():
        out[s] ^= {t}
    for s, targets in out.items():
        acc: set[int] = set()
        for t in targets:
            acc ^= out.get(t, set())
        if acc:
            return False
    return True


@dataclass(frozen=True)
class HomologyTable:
    ranks: dict[tuple[int, int], int]
    n: int

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def rank(self, m: int, a2: int) -> int:
        return self.ranks.get((m, a2), 0)

    def to_tsv(self) -> str:
        lines = [f"{m}\t{a2}\t{r}" for (m, a2), r in sorted(self.ranks.items())]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ranks": [{"M": m, "2A": a2, "rank": r} for (m, a2), r in sorted(self.ranks.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HomologyTable":
        return cls({(e["M"], e["2A"]): e["rank"] for e in data["ranks"]}, data["n"])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _group_index(keys: np.ndarray) -> tuple[np.ndarray, dict]:
    """Position of each element within the group of equal keys."""
    local = np.zeros(len(keys), dtype=np.int64)
    groups: dict = {}
    order = np.lexsort(keys.T[::-1]) if keys.ndim == 2 else np.argsort(keys, kind="stable")
    counters: dict = defaultdict(int)
    for i in order.tolist():
        k = tuple(keys[i]) if keys.ndim == 2 else keys[i]
        local[i] = counters[k]
        counters[k] += 1
    groups.update(counters)
    return local, groups


def boundary_ranks(maslov, alexander2, src, dst) -> dict[tuple[int, int], int]:
    """Rank of the boundary map out of each (M, 2A) block.

    Edge lists may repeat a pair; repeats cancel mod 2.
    """
    keys = np.stack([maslov, alexander2], axis=1)
    local, _ = _group_index(keys)
    rows: dict[int, int] = defaultdict(int)
    for s, t in zip(src.tolist(), dst.tolist()):
        rows[s] ^= 1 << int(local[t])
    by_block: dict[tuple[int, int], list[int]] = defaultdict(list)
    for s, v in rows.items():
        if v:
            by_block[(int(maslov[s]), int(alexander2[s]))].append(v)
    return {blk: f2.rank(vs) for blk, vs in by_block.items()}


def homology(d: GridDiagram, cap: int | None = None) -> HomologyTable:
    cx = differential(d, cap)
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for m, a2 in zip(cx.maslov.tolist(), cx.alexander2.tolist()):
        counts[(m, a2)] += 1
    out_rank = boundary_ranks(cx.maslov, cx.alexander2, cx.src, cx.dst)
    ranks = {}
    for (m, a2), dim in counts.items():
        r = dim - out_rank.get((m, a2), 0) - out_rank.get((m + 1, a2), 0)
        if r:
            ranks[(m, a2)] = r
    return HomologyTable(ranks, d.n)


def is_thin(t: HomologyTable) -> bool:
    """All support on one diagonal M - A = const."""
    return len({2 * m - a2 for (m, a2), r in t.ranks.items() if r}) <= 1


def hat_ranks(t: HomologyTable) -> dict[tuple[int, int], int]:
    """Divide out the (n-1)-fold two-dimensional factor with gradings (0,0), (-1,-1)."""
    ranks = dict(t.ranks)
    for _ in range(t.n - 1):
        out: dict[tuple[int, int], int] = {}
        for m, a2 in sorted(ranks, reverse=True):
            v = ranks[(m, a2)] - out.get((m + 1, a2 + 2), 0)
            if v < 0:
                raise ValueError("table is not a tensor multiple of the smearing factor")
            if v:
                out[(m, a2)] = v
        # remainder check: out * (1 + u) must reproduce ranks
        back: dict[tuple[int, int], int] = defaultdict(int)
        for (m, a2), v in out.items():
            back[(m, a2)] += v
            back[(m - 1, a2 - 2)] += v
        if {k: v for k, v in back.items() if v} != {k: v for k, v in ranks.items() if v}:
            raise ValueError("table is not a tensor multiple of the smearing factor")
        ranks = out
    return ranks


def symmetric_partner(m: int, a2: int, n: int) -> tuple[int, int]:
    """Image of (M, 2A) under the symmetry of the blocked table of a size-n grid.

    The hat symmetry (M, A) -> (M - 2A, -A) conjugated by the shift
    A -> A + (n - 1)/2 that centres the smearing factor.
    """
    return m - a2 - (n - 1), -a2 - 2 * (n - 1)


def is_symmetric(t: HomologyTable) -> bool:
    return all(t.rank(*symmetric_partner(m, a2, t.n)) == r for (m, a2), r in t.ranks.items())


def euler_characteristic(t_or_d) -> dict[int, int]:
    """Graded Euler characteristic as {2A: coefficient}."""
    chi: dict[int, int] = defaultdict(int)
    if isinstance(t_or_d, HomologyTable):
        for (m, a2), r in t_or_d.ranks.items():
            chi[a2] += (-1) ** (m % 2) * r
    else:
        m, a2 = gradings(t_or_d, state_array(t_or_d.n))
        for mm, aa in zip(m.tolist(), a2.tolist()):
            chi[aa] += 1 if mm % 2 == 0 else -1
    return {k: v for k, v in sorted(chi.items()) if v}
