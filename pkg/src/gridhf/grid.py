"""Grid diagrams: representation, validation, moves and classical invariants.

Coordinates: column ``c`` runs left to right, row ``r`` bottom to top, both
in ``0..n-1``.  ``o[c]`` and ``x[c]`` are the rows of the O and X markings
in column ``c``.  Markings sit at cell centres ``(c + 1/2, r + 1/2)``.

Knot convention: vertical segments run X -> O, horizontal segments run
O -> X, verticals cross over horizontals.

Legendrian convention: the front is the image under ``h = X + Y``,
``z = Y - X``.  NE and SW corners become cusps, NW and SE corners are
smoothed, and at a front crossing the horizontal grid segment (front slope
-1) passes in front.  The Legendrian is therefore the mirror of the grid
knot.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class GridError(ValueError):
    """Invalid grid input.  ``code`` is one of the VALIDATION_CODES."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


NOT_PERMUTATION = "not_permutation"
SHARED_CELL = "shared_cell"
MULTI_COMPONENT = "multi_component"
SIZE = "size"
PARSE = "parse"


@dataclass(frozen=True)
class GridDiagram:
    n: int
    o: tuple[int, ...]
    x: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "o", tuple(int(v) for v in self.o))
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))

    def __str__(self) -> str:
        return dumps_grid(self)

    def o_col(self) -> list[int]:
        """Column of the O marking in each row."""
        inv = [0] * self.n
        for c, r in enumerate(self.o):
            inv[r] = c
        return inv

    def x_col(self) -> list[int]:
        inv = [0] * self.n
        for c, r in enumerate(self.x):
            inv[r] = c
        return inv


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    errors: tuple[str, ...] = ()
    components: int = 0
    messages: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    r: int
    sl: int
    writhe: int


class StabilizationKind(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


def _is_perm(seq, n: int) -> bool:
    return len(seq) == n and sorted(seq) == list(range(n))


def _cycle_count(o, x) -> int:
    """Number of cycles of the permutation o . x^-1 on rows."""
    n = len(o)
    x_inv = [0] * n
    for c, r in enumerate(x):
        x_inv[r] = c
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        r = start
        while not seen[r]:
            seen[r] = True
            r = o[x_inv[r]]
    return cycles


def validate(d: GridDiagram) -> ValidationReport:
    errors = []
    messages = []
    if d.n < 1 or len(d.o) != d.n or len(d.x) != d.n:
        return ValidationReport(False, (SIZE,), 0, ("array lengths do not match n",))
    if not _is_perm(d.o, d.n):
        errors.append(NOT_PERMUTATION)
        messages.append("o is not a permutation of 0..n-1")
    if not _is_perm(d.x, d.n):
        if NOT_PERMUTATION not in errors:
            errors.append(NOT_PERMUTATION)
        messages.append("x is not a permutation of 0..n-1")
    if errors:
        return ValidationReport(False, tuple(errors), 0, tuple(messages))
    shared = [c for c in range(d.n) if d.o[c] == d.x[c]]
    if shared:
        errors.append(SHARED_CELL)
        messages.append(f"O and X share a cell in columns {shared}")
    components = _cycle_count(d.o, d.x)
    if components != 1:
        errors.append(MULTI_COMPONENT)
        messages.append(f"diagram has {components} components")
    return ValidationReport(not errors, tuple(errors), components, tuple(messages))


def check(d: GridDiagram) -> GridDiagram:
    """Return ``d`` unchanged or raise GridError for the first failure."""
    rep = validate(d)
    if not rep.valid:
        raise GridError(rep.errors[0], "; ".join(rep.messages))
    return d


def grid(o, x) -> GridDiagram:
    return check(GridDiagram(len(o), tuple(o), tuple(x)))


def unknot() -> GridDiagram:
    return GridDiagram(2, (0, 1), (1, 0))


# -- classical invariants -------------------------------------------------


def _between(v: int, a: int, b: int) -> bool:
    lo, hi = (a, b) if a < b else (b, a)
    return lo < v < hi


def grid_writhe(d: GridDiagram) -> int:
    """Writhe of the planar diagram of the grid knot (verticals over)."""
    o_col, x_col = d.o_col(), d.x_col()
    w = 0
    for c in range(d.n):
        v_dir = 1 if d.o[c] > d.x[c] else -1
        for r in range(d.n):
            a, b = o_col[r], x_col[r]
            if _between(r + 0.5, d.x[c] + 0.5, d.o[c] + 0.5) and _between(c + 0.5, a + 0.5, b + 0.5):
                h_dir = 1 if b > a else -1
                # sign of cross(over, under) with over = (0, v), under = (h, 0)
                w += -v_dir * h_dir
    return w


def corner_counts(d: GridDiagram) -> dict[str, int]:
    """Counts of cusp corners split by marking type and cusp direction.

    A marking in cell (c, r) is a NE corner when the other marking of its
    row lies to the west and the other marking of its column lies south.
    """
    o_col, x_col = d.o_col(), d.x_col()
    counts = {"down": 0, "up": 0, "ne": 0, "sw": 0}
    for c in range(d.n):
        for kind, r in (("X", d.x[c]), ("O", d.o[c])):
            other_row = d.o[c] if kind == "X" else d.x[c]
            other_col = o_col[r] if kind == "X" else x_col[r]
            west, south = other_col < c, other_row < r
            if west and south:
                counts["ne"] += 1
                counts["down" if kind == "X" else "up"] += 1
            elif not west and not south:
                counts["sw"] += 1
                counts["up" if kind == "X" else "down"] += 1
    return counts


def classical_invariants(d: GridDiagram) -> ClassicalInvariants:
    check(d)
    cc = corner_counts(d)
    cusps = cc["ne"] + cc["sw"]
    writhe = -grid_writhe(d)
    tb = writhe - cusps // 2
    r = (cc["down"] - cc["up"]) // 2
    return ClassicalInvariants(tb=tb, r=r, sl=tb - r, writhe=writhe)


# -- moves ----------------------------------------------------------------


def _insert(perm_rows: dict[int, int], n: int, col: int, row: int) -> dict[int, int]:
    """Shift columns >= col and rows >= row up by one."""
    out = {}
    for c, r in perm_rows.items():
        out[c + (c >= col)] = r + (r >= row)
    return out


def stabilize_at(d: GridDiagram, col: int, corner: str) -> GridDiagram:
    """X-stabilization at the X of column ``col``.

    ``corner`` in {"ne", "nw", "se", "sw"} is the position of the new O in
    the 2x2 block that replaces the X; the diagonally opposite cell is left
    empty and the other two cells get X's.
    """
    n = d.n
    r = d.x[col]
    new_col = col + 1 if corner in ("ne", "se") else col
    new_row = r + 1 if corner in ("ne", "nw") else r
    old_col = col if new_col == col + 1 else col + 1
    old_row = r if new_row == r + 1 else r + 1
    o = _insert({c: d.o[c] for c in range(n)}, n, new_col, new_row)
    x = _insert({c: d.x[c] for c in range(n) if c != col}, n, new_col, new_row)
    o[new_col] = new_row
    x[new_col] = old_row
    x[old_col] = new_row
    return GridDiagram(n + 1, tuple(o[c] for c in range(n + 1)), tuple(x[c] for c in range(n + 1)))


# An O placed NE of the old X cell is a negative stabilization, (tb, r) ->
# (tb - 1, r - 1); SW is positive, (tb - 1, r + 1).  NW and SE keep (tb, r).
_STAB_CORNER = {StabilizationKind.NEGATIVE: "ne", StabilizationKind.POSITIVE: "sw"}


def stabilize(d: GridDiagram, kind: StabilizationKind | str, col: int = 0) -> GridDiagram:
    check(d)
    kind = StabilizationKind(kind)
    return stabilize_at(d, col, _STAB_CORNER[kind])


def cyclic_shift(d: GridDiagram, dc: int = 0, dr: int = 0) -> GridDiagram:
    """Translate the torus grid by ``dc`` columns and ``dr`` rows."""
    n = d.n
    o = [0] * n
    x = [0] * n
    for c in range(n):
        o[(c + dc) % n] = (d.o[c] + dr) % n
        x[(c + dc) % n] = (d.x[c] + dr) % n
    return GridDiagram(n, tuple(o), tuple(x))


def _interleaved(a0: int, a1: int, b0: int, b1: int) -> bool:
    lo_a, hi_a = sorted((a0, a1))
    lo_b, hi_b = sorted((b0, b1))
    inside = [lo_a < v < hi_a for v in (lo_b, hi_b)]
    return inside[0] != inside[1]


def can_commute_columns(d: GridDiagram, c: int) -> bool:
    """Columns c and c+1 (mod n) hold disjoint or nested segments with no common end row."""
    c2 = (c + 1) % d.n
    a, b = (d.o[c], d.x[c]), (d.o[c2], d.x[c2])
    if set(a) & set(b):
        return False
    return not _interleaved(*a, *b)


def commute_columns(d: GridDiagram, c: int) -> GridDiagram:
    """Swap columns c and c+1 (mod n); a commutation move when allowed."""
    if not can_commute_columns(d, c):
        raise GridError("interleaved", f"columns {c} and {c + 1} interleave")
    c2 = (c + 1) % d.n
    o, x = list(d.o), list(d.x)
    o[c], o[c2] = o[c2], o[c]
    x[c], x[c2] = x[c2], x[c]
    return GridDiagram(d.n, tuple(o), tuple(x))


def transpose(d: GridDiagram) -> GridDiagram:
    """Reflect in the diagonal.  Same knot with reversed orientation, same (tb, r)."""
    return GridDiagram(d.n, tuple(d.o_col()), tuple(d.x_col()))


def commute_rows(d: GridDiagram, r: int) -> GridDiagram:
    return transpose(commute_columns(transpose(d), r))


def can_commute_rows(d: GridDiagram, r: int) -> bool:
    return can_commute_columns(transpose(d), r)


def mirror(d: GridDiagram) -> GridDiagram:
    """Mirror knot: reflect the columns left to right.

    Transposing would not do: it swaps which strands pass over and also
    reflects the plane, so the knot type survives (with reversed
    orientation) and so do tb and r.
    """
    check(d)
    return GridDiagram(d.n, d.o[::-1], d.x[::-1])


def reverse(d: GridDiagram) -> GridDiagram:
    """Orientation reversal: swap the roles of O and X."""
    check(d)
    return GridDiagram(d.n, d.x, d.o)


def connected_sum(d1: GridDiagram, d2: GridDiagram) -> GridDiagram:
    """Grid of size n1 + n2 - 1 presenting the Legendrian connected sum.

    ``d1`` fills the upper-left block and ``d2`` the lower-right one, sharing
    a single cell.  ``d1`` is shifted so an X sits in its bottom-right cell
    and ``d2`` so an O sits in its top-left cell; both are then deleted.
    """
    check(d1)
    check(d2)
    n1, n2 = d1.n, d2.n
    n = n1 + n2 - 1
    off = n1 - 1
    a = cyclic_shift(d1, n1 - 1, 0)
    a = cyclic_shift(a, 0, -a.x[off])
    b = cyclic_shift(d2, 0, n2 - 1 - d2.o[0])
    o = [r + n2 - 1 for r in a.o] + list(b.o[1:])
    x = [r + n2 - 1 for r in a.x] + list(b.x[1:])
    x[off] = b.x[0]
    return check(GridDiagram(n, tuple(o), tuple(x)))


# -- serialization ---------------------------------------------------------


def dumps_grid(d: GridDiagram) -> str:
    return f"{d.n}\n{' '.join(map(str, d.o))}\n{' '.join(map(str, d.x))}\n"


def loads_grid(text: str) -> GridDiagram:
    """Parse the three-line text format or its JSON mirror."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            return GridDiagram(int(data["n"]), tuple(data["o"]), tuple(data["x"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise GridError(PARSE, f"malformed grid JSON: {exc}") from None
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) != 3:
        raise GridError(PARSE, f"expected 3 data lines, got {len(lines)}")
    try:
        n = int(lines[0])
        o = tuple(int(t) for t in lines[1].split())
        x = tuple(int(t) for t in lines[2].split())
    except ValueError as exc:
        raise GridError(PARSE, f"malformed grid text: {exc}") from None
    return GridDiagram(n, o, x)


def grid_to_json(d: GridDiagram) -> dict:
    return {"n": d.n, "o": list(d.o), "x": list(d.x)}


def read_grid(path: str | Path) -> GridDiagram:
    return loads_grid(Path(path).read_text())
