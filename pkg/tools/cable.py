"""Dev-time construction of cable grids by block refinement.

Each marking of the companion becomes an m x m block with markings on
the anti-diagonal (sub-column k, sub-row m-1-k): the Legendrian m-copy.
A permutation ``perm`` applied to the sub-rows of one block reroutes the
strands there, inserting a braid.
"""

from __future__ import annotations

from itertools import permutations

from gridhf.grid import GridDiagram, validate


def m_copy(d: GridDiagram, m: int, twist=None) -> GridDiagram:
    """``twist = (kind, col, perm)`` permutes the sub-rows of one block."""
    n = d.n
    o = [0] * (n * m)
    x = [0] * (n * m)
    for c in range(n):
        for k in range(m):
            o[c * m + k] = d.o[c] * m + (m - 1 - k)
            x[c * m + k] = d.x[c] * m + (m - 1 - k)
    if twist is not None:
        kind, col, perm = twist
        arr = o if kind == "O" else x
        base = (d.o[col] if kind == "O" else d.x[col]) * m
        for k in range(m):
            arr[col * m + k] = base + perm[k]
    return GridDiagram(n * m, tuple(o), tuple(x))


def twisted_copies(d: GridDiagram, m: int):
    for kind in ("O", "X"):
        for col in range(d.n):
            for perm in permutations(range(m)):
                e = m_copy(d, m, (kind, col, perm))
                if validate(e).valid:
                    yield (kind, col, perm), e


def insert_line(d: GridDiagram, col: int, row: int) -> tuple[list[int], list[int]]:
    """Insert an empty column at index ``col`` and an empty row at index ``row``.

    Returns mutable o, x lists of length n + 1 with ``None`` in the new column.
    """
    n = d.n
    o = [None] * (n + 1)
    x = [None] * (n + 1)
    for c in range(n):
        c2 = c + (c >= col)
        o[c2] = d.o[c] + (d.o[c] >= row)
        x[c2] = d.x[c] + (d.x[c] >= row)
    return o, x


def zigzag_twist(d: GridDiagram, m: int, block: int, perm) -> GridDiagram | None:
    """Negative 1/m twist in the column bundle ``block`` of an m-copy.

    The strand in the rightmost sub-column turns west just below the O block,
    crosses the other m - 1 strands and rises in a new column inserted west of
    the bundle; ``perm`` assigns the O block's sub-rows to the new column and
    the remaining m - 1 sub-columns.
    """
    base_c = block * m
    o_row = d.o[base_c + m - 1]
    x_row = d.x[base_c]
    top = max(d.o[base_c:base_c + m])
    lo_o = min(d.o[base_c:base_c + m])
    if lo_o < min(d.x[base_c:base_c + m]):
        return None  # bundle runs downward
    row = lo_o
    o, x = insert_line(d, base_c, row)
    # after insertion: new column base_c, sub-columns base_c+1 .. base_c+m
    last = base_c + m
    o[last] = row
    x[base_c] = row
    rows = [lo_o + 1 + k for k in range(m)]
    cols = [base_c] + [base_c + 1 + k for k in range(m - 1)]
    for c, k in zip(cols, perm):
        o[c] = rows[k]
    return GridDiagram(d.n + 1, tuple(o), tuple(x))


def zigzag(d: GridDiagram, s: int, y: int, w: int) -> GridDiagram:
    """Reroute the vertical strand of column ``s`` through a new column.

    A new row is inserted at index ``y`` and a new column at index ``w``
    (indices in the enlarged grid refer to positions before shifting).  The
    strand of column ``s`` now ends at an O in the new row, runs along it to
    an X in the new column, and continues in the new column to the old O row.
    """
    o, x = insert_line(d, w, y)
    s2 = s + (s >= w)
    old_o = o[s2]
    o[s2] = y
    x[w] = y
    o[w] = old_o
    return GridDiagram(d.n + 1, tuple(o), tuple(x))


def bundle_zigzags(d: GridDiagram, m: int, block: int, moves) -> GridDiagram:
    """Zigzag strands of an upward column bundle of an m-copy westward.

    ``moves`` is a list of (p, q) with q < p: the strand currently in
    position p (counted west to east) turns west in a new row, crosses the
    strands in positions q..p-1 and rises in a new column placed just west
    of position q.  The O block at the top is finally re-sorted so the
    westmost strand takes the top sub-row.
    """
    cols = list(range(block * m, block * m + m))
    block_rows = sorted(d.o[c] for c in cols)
    if block_rows[0] < min(d.x[c] for c in cols):
        raise ValueError("bundle runs downward")
    o, x = list(d.o), list(d.x)
    for c in cols:
        o[c] = None
    order = cols[:]
    row = block_rows[0]
    for p, q in moves:
        w = order[q]
        size = len(o) + 1
        no, nx = [None] * size, [None] * size
        for c in range(len(o)):
            c2 = c + (c >= w)
            no[c2] = None if o[c] is None else o[c] + (o[c] >= row)
            nx[c2] = x[c] + (x[c] >= row)
        block_rows = [r + 1 for r in block_rows]
        order = [c + (c >= w) for c in order]
        s = order[p]
        no[s] = row
        nx[w] = row
        order = order[:q] + [w] + order[q:p] + order[p + 1:]
        o, x = no, nx
        row += 1
    for c, r in zip(order, sorted(block_rows, reverse=True)):
        o[c] = r
    return GridDiagram(len(o), tuple(o), tuple(x))
