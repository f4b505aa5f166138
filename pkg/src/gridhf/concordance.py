"""Obstructing Lagrangian concordance between Legendrian grid presentations.

A concordance from K1 to K2 forces equal classical invariants, and its map
on the Legendrian invariant sends the class of K2 to the class of K1.  So
Theta(K1) != 0 together with Theta(K2) = 0 rules one out.  Nothing here ever
asserts that a concordance exists.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .floer import CapacityError
from .grid import GridDiagram, GridError, StabilizationKind, check, classical_invariants, read_grid, stabilize
from .legendrian import ConventionError, theta

OBSTRUCTED_CLASSICAL = "obstructed_classical"
OBSTRUCTED_THETA = "obstructed_theta"
NOT_OBSTRUCTED = "not_obstructed"
ERROR = "error"

REPORT_SCHEMA = "gridhf.obstruction-report/1"
THREADS_ENV = "GRIDHF_THREADS"


@dataclass(frozen=True)
class KnotEvidence:
    n: int
    tb: int
    r: int
    sl: int
    # None when the classical prefilter already decided the pair
    theta_plus_vanishes: bool | None = None
    theta_explored: int | None = None


@dataclass(frozen=True)
class ObstructionVerdict:
    kind: str
    k1: KnotEvidence
    k2: KnotEvidence

    def to_json(self) -> dict:
        return {"kind": self.kind, "k1": asdict(self.k1), "k2": asdict(self.k2)}


def _evidence(d: GridDiagram, with_theta: bool, max_states) -> KnotEvidence:
    ci = classical_invariants(d)
    if not with_theta:
        return KnotEvidence(d.n, ci.tb, ci.r, ci.sl)
    tv = theta(d, "plus", max_states)
    return KnotEvidence(d.n, ci.tb, ci.r, ci.sl, tv.vanishes, tv.explored)


def decide(e1: KnotEvidence, e2: KnotEvidence) -> str:
    """Verdict kind as a function of the invariants alone."""
    if (e1.tb, e1.r) != (e2.tb, e2.r):
        return OBSTRUCTED_CLASSICAL
    if e1.theta_plus_vanishes is False and e2.theta_plus_vanishes is True:
        return OBSTRUCTED_THETA
    return NOT_OBSTRUCTED


def obstruct(k1: GridDiagram, k2: GridDiagram, max_states: int | None = None) -> ObstructionVerdict:
    """Try to rule out a Lagrangian concordance from ``k1`` to ``k2``."""
    check(k1)
    check(k2)
    c1, c2 = classical_invariants(k1), classical_invariants(k2)
    matching = (c1.tb, c1.r) == (c2.tb, c2.r)
    e1 = _evidence(k1, matching, max_states)
    e2 = _evidence(k2, matching, max_states)
    return ObstructionVerdict(decide(e1, e2), e1, e2)


@dataclass(frozen=True)
class StabilizedVerdict:
    i: int  # negative stabilizations applied to k1
    j: int  # and to k2
    verdict: ObstructionVerdict


def negative_stabilizations(d: GridDiagram, depth: int) -> list[GridDiagram]:
    out = [check(d)]
    for _ in range(depth):
        out.append(stabilize(out[-1], StabilizationKind.NEGATIVE))
    return out


def obstruct_stabilized(k1: GridDiagram, k2: GridDiagram, depth: int,
                        max_states: int | None = None) -> list[StabilizedVerdict]:
    """``obstruct`` on every pair of at most ``depth`` negative stabilizations."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    s1 = negative_stabilizations(k1, depth)
    s2 = negative_stabilizations(k2, depth)
    return [StabilizedVerdict(i, j, obstruct(a, b, max_states))
            for i, a in enumerate(s1) for j, b in enumerate(s2)]


# -- batch ----------------------------------------------------------------


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


@dataclass(frozen=True)
class BatchRow:
    index: int
    k1: str
    k2: str
    kind: str
    verdict: ObstructionVerdict | None = None
    error_code: str | None = None
    error: str | None = None

    def to_json(self) -> dict:
        out = {"index": self.index, "k1": self.k1, "k2": self.k2, "kind": self.kind}
        if self.verdict is not None:
            out["evidence"] = {"k1": asdict(self.verdict.k1), "k2": asdict(self.verdict.k2)}
        if self.error_code is not None:
            out["error"] = {"code": self.error_code, "message": self.error}
        return out


def _load(src) -> GridDiagram:
    return src if isinstance(src, GridDiagram) else read_grid(src)


def _run_pair(index: int, p1, p2, max_states) -> BatchRow:
    name1, name2 = str(p1), str(p2)
    try:
        k1, k2 = _load(p1), _load(p2)
        check(k1)
        check(k2)
    except (GridError, OSError, UnicodeDecodeError) as exc:
        return BatchRow(index, name1, name2, ERROR, error_code="parse", error=str(exc))
    try:
        v = obstruct(k1, k2, max_states)
    except CapacityError as exc:
        return BatchRow(index, name1, name2, ERROR, error_code="capacity", error=str(exc))
    except ConventionError as exc:
        return BatchRow(index, name1, name2, ERROR, error_code="internal", error=str(exc))
    return BatchRow(index, name1, name2, v.kind, verdict=v)


@dataclass(frozen=True)
class BatchReport:
    rows: tuple[BatchRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.kind != ERROR for r in self.rows)

    def error_codes(self) -> set[str]:
        return {r.error_code for r in self.rows if r.error_code}

    def to_json(self) -> dict:
        return {"schema": REPORT_SCHEMA, "rows": [r.to_json() for r in self.rows]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def to_tsv(self) -> str:
        head = "index\tk1\tk2\tkind\ttb1\tr1\ttheta1_vanishes\ttb2\tr2\ttheta2_vanishes\terror"
        lines = [head]
        fmt = lambda v: "" if v is None else str(v).lower()  # noqa: E731
        for r in self.rows:
            if r.verdict is None:
                cells = [""] * 6 + [f"{r.error_code}: {r.error}"]
            else:
                a, b = r.verdict.k1, r.verdict.k2
                cells = [a.tb, a.r, fmt(a.theta_plus_vanishes), b.tb, b.r, fmt(b.theta_plus_vanishes), ""]
            lines.append("\t".join(map(str, [r.index, r.k1, r.k2, r.kind, *cells])))
        return "\n".join(lines) + "\n"


def batch_report(pairs, max_states: int | None = None, threads: int | None = None) -> BatchReport:
    """One row per pair, in input order; failures stay local to their row.

    ``pairs`` holds (k1, k2) items, each a path or a GridDiagram.
    """
    pairs = list(pairs)
    threads = threads or thread_count()
    jobs = [(i, a, b, max_states) for i, (a, b) in enumerate(pairs)]
    if threads <= 1 or len(jobs) <= 1:
        rows = [_run_pair(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda job: _run_pair(*job), jobs))
    return BatchReport(tuple(rows))


def read_pairs_file(path: str | Path) -> list[tuple[str, str]]:
    """Pairs listed one per line as two whitespace-separated paths; relative paths resolve against the list file."""
    base = Path(path).parent
    pairs = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GridError("parse", f"pair line needs two paths: {line!r}")
        pairs.append(tuple(str(p if Path(p).is_absolute() else base / p) for p in parts))
    return pairs
