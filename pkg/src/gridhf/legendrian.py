"""Legendrian grid invariants: the canonical class, its vanishing, tau, and Bennequin bounds.

The canonical states sit at the corners of the X-marked cells: ``x+`` takes
the NE corner of each X, ``x-`` the SW corner.  Both are cycles of the
fully blocked complex, and ``M(x+) = 2A(x+) = tb - r + 1``.

Vanishing is decided on the connected component of ``x+`` in the graph
whose vertices are the states of bigradings (M, A) and (M + 1, A) and whose
edges are empty rectangles.  The boundary map is block diagonal over these
components, so membership of ``x+`` in the image only needs its own
component.  The search stops early once a chain bounding ``x+`` is found.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import f2
from .floer import (
    Bigrading,
    CapacityError,
    _check_cap,
    bigrading,
    gradings,
    homology,
    incoming_moves,
    perm_rank,
    is_thin,
    rectangle_moves,
    state_array,
)
from .grid import GridDiagram, check, classical_invariants

DEFAULT_MAX_STATES = 1_000_000


class ConventionError(RuntimeError):
    """A canonical state failed to be a cycle: the grid conventions are inconsistent."""


@dataclass(frozen=True)
class ThetaVerdict:
    state: tuple[int, ...]
    bigrading: Bigrading
    is_cycle: bool
    vanishes: bool
    explored: int = 0
    exhausted: bool = False
    # states of bidegree (M+1, A) whose boundaries sum to the canonical state
    certificate: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "state": list(self.state),
            "M": self.bigrading.maslov,
            "2A": self.bigrading.alexander2,
            "is_cycle": self.is_cycle,
            "vanishes": self.vanishes,
            "explored": self.explored,
            "exhausted": self.exhausted,
            "certificate": [list(s) for s in self.certificate],
        }


@dataclass(frozen=True)
class TauResult:
    tau: int
    # (2A level, dim of cycles, dim of boundaries) in Maslov grading 0, per level
    certificate: tuple[tuple[int, int, int], ...] = ()


def canonical_state(d: GridDiagram, sign: str = "plus") -> tuple[int, ...]:
    n = d.n
    s = [0] * n
    if sign == "plus":
        for c in range(n):
            s[(c + 1) % n] = (d.x[c] + 1) % n
    elif sign == "minus":
        for c in range(n):
            s[c] = d.x[c]
    else:
        raise ValueError(f"sign must be 'plus' or 'minus', not {sign!r}")
    return tuple(s)


def _boundary_parity(targets: np.ndarray) -> dict[bytes, int]:
    par: dict[bytes, int] = {}
    for row in targets:
        k = row.tobytes()
        par[k] = par.get(k, 0) ^ 1
    return {k: v for k, v in par.items() if v}


def _reduce_target(pivots) -> int | None:
    """Combination of boundary rows equal to the unit vector at index 0, if any."""
    vec, combo = 1, 0
    while vec:
        hit = pivots.get(vec & -vec)
        if hit is None:
            return None
        vec ^= hit[0]
        combo ^= hit[1]
    return combo


def theta(d: GridDiagram, sign: str = "plus", max_states: int | None = None) -> ThetaVerdict:
    """Decide whether the canonical state is a boundary.

    Raises CapacityError if the component is larger than ``max_states``
    without a bounding chain having been found.
    """
    check(d)
    max_states = DEFAULT_MAX_STATES if max_states is None else max_states
    s = canonical_state(d, sign)
    bg = bigrading(d, s)
    x0 = np.asarray([s], dtype=np.int16)
    _, out = rectangle_moves(d, x0)[:2]
    if _boundary_parity(out):
        raise ConventionError(f"canonical state {s} is not a cycle")

    v_index: dict[bytes, int] = {x0[0].tobytes(): 0}
    u_index: dict[bytes, int] = {}
    u_states: list[np.ndarray] = []
    pivots: dict[int, tuple[int, int]] = {}  # low bit -> (row, combination of u's)
    frontier_v = x0
    while len(frontier_v):
        src, came = incoming_moves(d, frontier_v)
        new_u = []
        for row in came:
            k = row.tobytes()
            if k not in u_index:
                u_index[k] = len(u_states)
                u_states.append(row)
                new_u.append(row)
        if not new_u:
            break
        new_u = np.asarray(new_u, dtype=np.int16)
        src, tgt, _ = rectangle_moves(d, new_u)
        rows = [0] * len(new_u)
        next_v = []
        for i, t in zip(src.tolist(), tgt):
            k = t.tobytes()
            j = v_index.get(k)
            if j is None:
                j = v_index[k] = len(v_index)
                next_v.append(t)
            rows[i] ^= 1 << j
        base = len(u_states) - len(new_u)
        for i, vec in enumerate(rows):
            combo = 1 << (base + i)
            while vec:
                low = vec & -vec
                hit = pivots.get(low)
                if hit is None:
                    pivots[low] = (vec, combo)
                    break
                vec ^= hit[0]
                combo ^= hit[1]
        combo = _reduce_target(pivots)
        if combo is not None:
            chain = tuple(tuple(int(v) for v in u_states[i])
                          for i in range(combo.bit_length()) if combo >> i & 1)
            return ThetaVerdict(s, bg, True, True, len(u_index) + len(v_index), False, chain)
        if len(u_index) + len(v_index) > max_states:
            raise CapacityError(
                f"component of the canonical state exceeds {max_states} states without a bounding chain")
        frontier_v = np.asarray(next_v, dtype=np.int16).reshape(-1, d.n)
    return ThetaVerdict(s, bg, True, False, len(u_index) + len(v_index), True)


def chain_boundary(d: GridDiagram, chain) -> set[tuple[int, ...]]:
    """Boundary of a sum of states, as a set of states (F2 coefficients)."""
    if not len(chain):
        return set()
    _, tgt, _ = rectangle_moves(d, np.asarray(chain, dtype=np.int16))
    return {tuple(int(v) for v in np.frombuffer(k, dtype=np.int16))
            for k in _boundary_parity(tgt)}


def tau_grid(d: GridDiagram, cap: int | None = None) -> TauResult:
    """Tau of the knot presented by the grid (verticals over).

    Uses the complex whose rectangles avoid the O's and may contain X's;
    the Alexander grading is a filtration that drops by the number of X's.
    Its homology in Maslov grading 0 is one-dimensional, and tau is the
    least level whose filtered piece carries it.
    """
    check(d)
    _check_cap(d.n, cap)
    S = state_array(d.n)
    m, a2 = gradings(d, S)
    c0 = np.nonzero(m == 0)[0]
    c1 = np.nonzero(m == 1)[0]
    order = c0[np.argsort(a2[c0], kind="stable")]
    pos = np.full(len(S), -1, dtype=np.int64)
    pos[order] = np.arange(len(order))
    levels = a2[order]

    # cycles: incremental rank of the boundary map out of Maslov 0 in filtration order
    src, tgt, _ = rectangle_moves(d, S[order], allow_x=True)
    tgt_rank = perm_rank(tgt)
    m1 = np.nonzero(m == -1)[0]
    pos_m1 = np.full(len(S), -1, dtype=np.int64)
    pos_m1[m1] = np.arange(len(m1))
    images = [0] * len(order)
    for i, t in zip(src.tolist(), tgt_rank.tolist()):
        images[i] ^= 1 << int(pos_m1[t])
    ech = f2.Echelon()
    ranks = []
    for v in images:
        ech.add(v)
        ranks.append(ech.rank)

    # boundaries: leading (highest filtration) index of each element of an echelon basis
    src, tgt, _ = rectangle_moves(d, S[c1], allow_x=True)
    tgt_rank = perm_rank(tgt)
    rows = [0] * len(c1)
    for i, t in zip(src.tolist(), tgt_rank.tolist()):
        rows[i] ^= 1 << int(pos[t])
    high = f2.HighEchelon()
    leads = sorted(lead for lead in (high.add(v) for v in rows) if lead >= 0)

    cert = []
    tau = None
    lead_i = 0
    for k in range(len(order)):
        if k + 1 < len(order) and levels[k + 1] == levels[k]:
            continue
        while lead_i < len(leads) and leads[lead_i] <= k:
            lead_i += 1
        z = (k + 1) - ranks[k]
        cert.append((int(levels[k]), z, lead_i))
        if tau is None and z > lead_i:
            tau = int(levels[k])
    if tau is None or z - lead_i != 1:
        raise ConventionError("Maslov-0 homology of the X-allowed complex is not one-dimensional")
    if tau % 2:
        raise ConventionError("tau level is not an integer")
    return TauResult(tau // 2, tuple(cert))


def tau(d: GridDiagram, cap: int | None = None) -> TauResult:
    """Tau of the Legendrian knot type, which is the mirror of the grid knot."""
    res = tau_grid(d, cap)
    return TauResult(-res.tau, res.certificate)


@dataclass(frozen=True)
class BennequinReport:
    sl: int
    tau: int
    bound: int
    slack: int
    holds: bool
    sharp: bool


def bennequin_checks(d: GridDiagram, cap: int | None = None) -> BennequinReport:
    sl = classical_invariants(d).sl
    t = tau(d, cap).tau
    bound = 2 * t - 1
    return BennequinReport(sl, t, bound, bound - sl, sl <= bound, sl == bound)


def thin_shortcut(d: GridDiagram, cap: int | None = None) -> str:
    """'nonzero' / 'zero' from thinness and sharpness of the Bennequin bound, else 'not_applicable'."""
    if not is_thin(homology(d, cap)):
        return "not_applicable"
    return "nonzero" if bennequin_checks(d, cap).sharp else "zero"


def invariants_report(d: GridDiagram, cap: int | None = None, max_states: int | None = None) -> dict:
    ci = classical_invariants(d)
    out = {"tb": ci.tb, "r": ci.r, "sl": ci.sl}
    out["theta_plus_vanishes"] = theta(d, "plus", max_states).vanishes
    try:
        out["tau"] = tau(d, cap).tau
        out["thin"] = is_thin(homology(d, cap))
    except CapacityError:
        out["tau"] = None
        out["thin"] = None
    return out


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True)
