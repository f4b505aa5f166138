"""Dev-time helpers: planar diagram codes of grid knots, Alexander filter, snappy identification.

Not part of the package; snappy is only needed here.
"""

from __future__ import annotations

import numpy as np

from gridhf.grid import GridDiagram


def winding_matrix(d: GridDiagram) -> np.ndarray:
    """Winding number of the grid knot around each lattice point (i, j)."""
    n = d.n
    w = np.zeros((n, n), dtype=int)
    for c in range(n):
        lo, hi = sorted((d.x[c], d.o[c]))
        sgn = 1 if d.o[c] > d.x[c] else -1
        for i in range(c + 1, n):
            w[i, lo + 1:hi + 1] += sgn
    return w


def det_at(d: GridDiagram, t: float) -> float:
    return float(np.linalg.det(float(t) ** (-winding_matrix(d).astype(float))))


def grid_pd(d: GridDiagram) -> list[list[int]]:
    """PD code of the grid knot (verticals over), KnotTheory conventions."""
    n = d.n
    o_col, x_col = d.o_col(), d.x_col()
    # walk: start at the O of column 0, go along the row to its X, then down/up the column to its O
    events = []  # (kind, crossing key, direction vector)
    c = 0
    for _ in range(n):
        r = d.o[c]
        c2 = x_col[r]
        # horizontal segment at row r from column c to c2 passes column centres strictly between
        cols = range(c + 1, c2) if c2 > c else range(c - 1, c2, -1)
        for cc in cols:
            lo, hi = sorted((d.x[cc], d.o[cc]))
            if lo < r < hi:
                events.append(("under", (cc, r), (1 if c2 > c else -1, 0)))
        r2 = d.o[c2]
        vstep = 1 if r2 > r else -1
        rows = range(r + 1, r2) if r2 > r else range(r - 1, r2, -1)
        for rr in rows:
            a, b = sorted((o_col[rr], x_col[rr]))
            if a < c2 < b:
                events.append(("over", (c2, rr), (0, vstep)))
        c = c2
    m = len(events)
    if m == 0:
        return []
    info: dict = {}
    for k, (kind, key, vec) in enumerate(events):
        inc, out = k + 1, (k + 1) % m + 1  # edge entering event k is k+1 (1-based), leaving is next
        info.setdefault(key, {})[kind] = (inc, out, vec)
    pd = []
    for key, v in info.items():
        ui, uo, (ux, uy) = v["under"]
        oi, oo, (ox, oy) = v["over"]
        # going counterclockwise from the incoming under edge; the over strand
        # enters on the side it comes from
        if ux * oy - uy * ox > 0:
            pd.append([ui, oi, uo, oo])
        else:
            pd.append([ui, oo, uo, oi])
    return pd


def identify(d: GridDiagram):
    import snappy

    pd = grid_pd(d)
    if not pd:
        return "unknot"
    L = snappy.Link(pd)
    L.simplify("global")
    if len(L.crossings) == 0:
        return "unknot"
    return L.exterior().identify()
