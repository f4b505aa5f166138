"""Domains on abstract Heegaard (triple) diagrams, given as incidence data.

A diagram lists regions (with exact Euler measures and basepoints),
intersection points, local corner counts ``(region, point) -> k`` and curves.
Each curve is a cyclic sequence of oriented edges, each edge recording the
regions on its left and right.  A domain is an integer (or rational)
multiplicity per region.

The boundary of a domain has coefficient ``mult(left) - mult(right)`` on
each edge; the domain is periodic when that coefficient is constant along
every curve, so the boundary is a sum of whole curves.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

FAMILIES = ("alpha", "beta", "gamma")


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Region:
    name: str
    euler: Fraction
    basepoints: tuple[str, ...] = ()


@dataclass(frozen=True)
class Edge:
    left: str
    right: str
    start: str | None = None
    end: str | None = None


@dataclass(frozen=True)
class Curve:
    name: str
    family: str
    edges: tuple[Edge, ...]


@dataclass
class CurveDiagram:
    regions: dict[str, Region]
    points: dict[str, tuple[str, str]]  # point -> the two curves through it
    corners: dict[tuple[str, str], int]  # (region, point) -> local corner count
    curves: dict[str, Curve]
    chi: int | None = None
    name: str = ""

    def region_names(self) -> list[str]:
        return list(self.regions)

    def family(self, fam: str) -> list[Curve]:
        return [c for c in self.curves.values() if c.family == fam]


@dataclass(frozen=True)
class DomainVector:
    mult: dict[str, Fraction] = field(default_factory=dict)

    def __add__(self, other: "DomainVector") -> "DomainVector":
        keys = set(self.mult) | set(other.mult)
        return DomainVector({k: self.mult.get(k, 0) + other.mult.get(k, 0) for k in keys})

    def scale(self, c) -> "DomainVector":
        return DomainVector({k: c * v for k, v in self.mult.items()})

    def __getitem__(self, r: str):
        return self.mult[r]


def domain(**mult) -> DomainVector:
    return DomainVector({k: Fraction(v) for k, v in mult.items()})


# -- consistency ----------------------------------------------------------


def check_diagram(d: CurveDiagram) -> CurveDiagram:
    """Raise DomainError unless the incidence data is consistent."""
    for fam in {c.family for c in d.curves.values()}:
        if fam not in FAMILIES:
            raise DomainError(f"unknown curve family {fam!r}")
    for p, (c1, c2) in d.points.items():
        if c1 not in d.curves or c2 not in d.curves:
            raise DomainError(f"point {p} lies on an unknown curve")
        if d.curves[c1].family == d.curves[c2].family:
            raise DomainError(f"point {p} joins two curves of the same family")
    totals: dict[str, int] = {p: 0 for p in d.points}
    for (r, p), k in d.corners.items():
        if r not in d.regions:
            raise DomainError(f"corner references unknown region {r}")
        if p not in d.points:
            raise DomainError(f"corner references unknown point {p}")
        if not 0 <= k <= 4:
            raise DomainError(f"corner count {k} at ({r}, {p}) outside 0..4")
        totals[p] += k
    bad = [p for p, t in totals.items() if t != 4]
    if bad:
        raise DomainError(f"points without exactly four corners: {sorted(bad)}")
    for c in d.curves.values():
        if not c.edges:
            raise DomainError(f"curve {c.name} has no edges")
        for e in c.edges:
            for r in (e.left, e.right):
                if r not in d.regions:
                    raise DomainError(f"curve {c.name} borders unknown region {r}")
            for p in (e.start, e.end):
                if p is not None and c.name not in d.points.get(p, ()):
                    raise DomainError(f"edge endpoint {p} is not on curve {c.name}")
        ends = [(e.start, e.end) for e in c.edges]
        for (s0, e0), (s1, _) in zip(ends, ends[1:] + ends[:1]):
            if e0 != s1:
                raise DomainError(f"edges of curve {c.name} do not form a cycle")
    if d.chi is not None:
        total = sum(r.euler for r in d.regions.values())
        if total != d.chi:
            raise DomainError(f"Euler measures sum to {total}, surface has chi {d.chi}")
    return d


# -- measures -------------------------------------------------------------


def _mult(d: CurveDiagram, v: DomainVector, r: str) -> Fraction:
    try:
        return Fraction(v.mult[r])
    except KeyError:
        raise DomainError(f"domain has no multiplicity for region {r}") from None


def euler_measure(d: CurveDiagram, v: DomainVector) -> Fraction:
    return sum((_mult(d, v, r) * reg.euler for r, reg in d.regions.items()), Fraction(0))


def point_multiplicity(d: CurveDiagram, v: DomainVector, p) -> Fraction:
    """Average of the four corner multiplicities at ``p``; additive over tuples."""
    if not isinstance(p, str):
        return sum((point_multiplicity(d, v, q) for q in p), Fraction(0))
    if p not in d.points:
        raise DomainError(f"unknown point {p}")
    total = Fraction(0)
    for (r, q), k in d.corners.items():
        if q == p and k:
            total += k * _mult(d, v, r)
    return total / 4


def basepoint_multiplicity(d: CurveDiagram, v: DomainVector, base: str = "z") -> Fraction:
    return sum((_mult(d, v, r) for r, reg in d.regions.items() if base in reg.basepoints), Fraction(0))


def boundary(d: CurveDiagram, v: DomainVector) -> dict[str, list[Fraction]]:
    """Boundary coefficient on every edge, per curve."""
    return {c.name: [_mult(d, v, e.left) - _mult(d, v, e.right) for e in c.edges]
            for c in d.curves.values()}


def periodic_boundary(d: CurveDiagram, v: DomainVector) -> dict[str, Fraction] | None:
    """Boundary as {curve: coefficient} when it is a sum of whole curves, else None."""
    out = {}
    for name, coeffs in boundary(d, v).items():
        if len(set(coeffs)) != 1:
            return None
        if coeffs[0]:
            out[name] = coeffs[0]
    return out


def chern_pairing(d: CurveDiagram, P: DomainVector, x) -> int:
    """``e(P) + 2 n_x(P)`` for a periodic domain ``P`` and a generator tuple ``x``."""
    if periodic_boundary(d, P) is None:
        raise DomainError("domain is not periodic: its boundary is not a sum of whole curves")
    val = euler_measure(d, P) + 2 * point_multiplicity(d, P, tuple(x))
    if val.denominator != 1:
        raise DomainError(f"pairing {val} is not an integer")
    return int(val)


def maslov_of_periodic(d: CurveDiagram, P: DomainVector, x) -> int:
    """Maslov index of a periodic domain at ``x``; the same number as the pairing."""
    return chern_pairing(d, P, x)


def winding_bound(m: int, K: int) -> int:
    """Least integer N with N > m^2 K^2 + m K."""
    if m < 0 or K < 0:
        raise ValueError("m and K must be nonnegative")
    return m * m * K * K + m * K + 1


# -- exact linear algebra ---------------------------------------------------


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    ncols = len(A[0]) if A else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        lead = A[r][c]
        A[r] = [v / lead for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _primitive(v: list[Fraction], normalize_sign: bool = True) -> list[int]:
    den = math.lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) if any(ints) else 1
    ints = [i // g for i in ints]
    lead = next((i for i in ints if i), 0)
    return [-i for i in ints] if normalize_sign and lead < 0 else ints


@dataclass(frozen=True)
class PeriodicDomain:
    domain: DomainVector
    boundary: dict[str, int]


def periodic_domain_basis(d: CurveDiagram, families=FAMILIES, eliminate=(), blocked=("z",)):
    """Basis of the rational periodic domains bounded by curves of ``families``.

    Regions carrying a ``blocked`` basepoint get multiplicity zero.  The basis
    is put in reduced echelon form with the boundary coefficients of the
    curves in ``eliminate`` (in order) as leading coordinates, so each of
    those curves appears in the boundary of at most one basis element.  Each
    element is scaled to a primitive integer vector.
    """
    check_diagram(d)
    families = tuple(families)
    regions = [r for r, reg in d.regions.items() if not set(reg.basepoints) & set(blocked)]
    curves = [c.name for c in d.curves.values() if c.family in families]
    elim = [c for c in eliminate if c in curves]
    rest = [c for c in curves if c not in elim]
    # unknowns: eliminated curve coefficients, region mults, remaining curve coefficients
    cols = [("k", c) for c in elim] + [("r", r) for r in regions] + [("k", c) for c in rest]
    index = {key: i for i, key in enumerate(cols)}
    eqs = []
    for c in d.curves.values():
        for e in c.edges:
            row = [Fraction(0)] * len(cols)
            if ("r", e.left) in index:
                row[index[("r", e.left)]] += 1
            if ("r", e.right) in index:
                row[index[("r", e.right)]] -= 1
            if c.name in curves:
                row[index[("k", c.name)]] -= 1
            if any(row):
                eqs.append(row)
    null = nullspace(eqs, len(cols))
    if not null:
        return []
    basis, _ = rref(null)
    out = []
    for v in basis:
        ints = _primitive(v)
        mult = {r: Fraction(0) for r in d.regions}
        bd = {}
        for (kind, name), val in zip(cols, ints):
            if kind == "r":
                mult[name] = Fraction(val)
            elif val:
                bd[name] = val
        out.append(PeriodicDomain(DomainVector(mult), bd))
    return out


# -- weak admissibility -----------------------------------------------------


def _fourier_motzkin(ineqs: list[tuple[list[Fraction], Fraction]], nvars: int):
    """Find x with a.x >= b for all (a, b), or None.  Exact arithmetic."""
    stages = [ineqs]
    cur = ineqs
    for j in reversed(range(nvars)):
        pos = [(a, b) for a, b in cur if a[j] > 0]
        neg = [(a, b) for a, b in cur if a[j] < 0]
        out = [(a, b) for a, b in cur if a[j] == 0]
        for ap, bp in pos:
            for an, bn in neg:
                lp, ln = -an[j], ap[j]
                a = [lp * x + ln * y for x, y in zip(ap, an)]
                out.append((a, lp * bp + ln * bn))
        # drop duplicates up to positive scaling
        seen = {}
        for a, b in out:
            lead = next((abs(x) for x in a if x != 0), abs(b) or Fraction(1))
            key = (tuple(x / lead for x in a), b / lead)
            seen[key] = (a, b)
        cur = list(seen.values())
        stages.append(cur)
    if any(b > 0 for a, b in cur):
        return None
    x = [Fraction(0)] * nvars
    for j in range(nvars):
        system = stages[nvars - 1 - j]
        lo, hi = None, None
        for a, b in system:
            if a[j] == 0:
                continue
            rest = sum((a[k] * x[k] for k in range(j + 1, nvars)), Fraction(0))
            # only variables 0..j are free here; those below j were eliminated later
            rest += sum((a[k] * x[k] for k in range(j)), Fraction(0))
            bound = (b - rest) / a[j]
            if a[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            x[j] = lo if lo == hi else (lo + hi) / 2 if hi - lo < 1 else Fraction(math.ceil(lo))
        elif lo is not None:
            x[j] = Fraction(math.ceil(lo))
        elif hi is not None:
            x[j] = Fraction(math.floor(hi))
    return x


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    # integer coefficients on the basis of a nonzero domain with all multiplicities >= 0
    witness: tuple[int, ...] | None = None
    witness_domain: DomainVector | None = None

    def __bool__(self) -> bool:
        return self.admissible


def _as_vectors(d: CurveDiagram | None, basis):
    vecs = []
    for b in basis:
        dv = b.domain if isinstance(b, PeriodicDomain) else b
        vecs.append(dv)
    regions = sorted(set().union(*(v.mult for v in vecs))) if vecs else []
    return vecs, regions


def is_weakly_admissible(d: CurveDiagram | None, basis) -> AdmissibilityResult:
    """Decide whether some nonzero combination of ``basis`` is everywhere >= 0.

    A nonpositive domain is the negative of a nonnegative one, so one sign
    suffices.  The basis is assumed linearly independent, so a nonzero
    combination gives a nonzero domain; the cone is cut by the normalisation
    that the multiplicities sum to one.
    """
    vecs, regions = _as_vectors(d, basis)
    m = len(vecs)
    if m == 0:
        return AdmissibilityResult(True)
    cols = [[Fraction(v.mult.get(r, 0)) for v in vecs] for r in regions]
    ineqs = [(row, Fraction(0)) for row in cols]
    total = [sum(col[i] for col in cols) for i in range(m)]
    ineqs.append((total, Fraction(1)))
    ineqs.append(([-t for t in total], Fraction(-1)))
    sol = _fourier_motzkin(ineqs, m)
    if sol is None:
        return AdmissibilityResult(True)
    coeffs = _primitive(sol, normalize_sign=False)  # keep the witness domain nonnegative
    dom = DomainVector({r: sum((c * v.mult.get(r, 0) for c, v in zip(coeffs, vecs)), Fraction(0))
                        for r in regions})
    return AdmissibilityResult(False, tuple(coeffs), dom)


# -- JSON -----------------------------------------------------------------


def diagram_to_json(d: CurveDiagram) -> dict:
    return {
        "name": d.name,
        "chi": d.chi,
        "regions": [{"name": r.name, "euler": str(r.euler), "basepoints": list(r.basepoints)}
                    for r in d.regions.values()],
        "points": [{"name": p, "curves": list(cs)} for p, cs in d.points.items()],
        "corners": [{"region": r, "point": p, "count": k} for (r, p), k in d.corners.items()],
        "curves": [{"name": c.name, "family": c.family,
                    "edges": [{"left": e.left, "right": e.right, "from": e.start, "to": e.end}
                              for e in c.edges]}
                   for c in d.curves.values()],
    }


def diagram_from_json(data: dict) -> CurveDiagram:
    try:
        regions = {r["name"]: Region(r["name"], Fraction(r["euler"]), tuple(r.get("basepoints", ())))
                   for r in data["regions"]}
        points = {p["name"]: tuple(p["curves"]) for p in data["points"]}
        corners = {(c["region"], c["point"]): int(c["count"]) for c in data["corners"]}
        curves = {c["name"]: Curve(c["name"], c["family"],
                                   tuple(Edge(e["left"], e["right"], e.get("from"), e.get("to"))
                                         for e in c["edges"]))
                  for c in data["curves"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed diagram JSON: {exc}") from None
    for p, cs in points.items():
        if len(cs) != 2:
            raise DomainError(f"point {p} must lie on exactly two curves")
    return CurveDiagram(regions, points, corners, curves, data.get("chi"), data.get("name", ""))


def dumps_diagram(d: CurveDiagram) -> str:
    return json.dumps(diagram_to_json(d), indent=1, sort_keys=True)


def loads_diagram(text: str) -> CurveDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed diagram JSON: {exc}") from None
    return diagram_from_json(data)


def read_diagram(path: str | Path) -> CurveDiagram:
    return loads_diagram(Path(path).read_text())


def domain_to_json(v: DomainVector) -> dict:
    return {r: str(m) for r, m in sorted(v.mult.items())}


def domain_from_json(data: dict) -> DomainVector:
    return DomainVector({r: Fraction(m) for r, m in data.items()})
