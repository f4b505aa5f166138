"""Concrete incidence-data diagrams for the domain calculus.

``periodic_model(g, n)`` encodes the neighbourhood data that matters for the
bottom characterisation: a surface of genus n + 2g + 1 with three regions

    R_Sigma  multiplicity 2 in P,  e = 1/2 - 2n - 2g
    R_S      multiplicity 1,       e = -1 - 2g
    R_Z      multiplicity 0,       e = 1/2, holds z

and curves alpha_i, b_i (b = beta or gamma) for i = 1..n+2g+1.  For
i <= n the pair meets once at y_i inside R_Sigma.  For the 2g middle indices
the pair meets at x^i (inside R_S) and x'^i (inside R_Sigma), and each
curve also meets the last curve of the other family twice (p, p' on
alpha_last; q, q' on b_last), half in R_S and half in R_Sigma.  The last
pair meets at u and v on the boundary of the bigon R_Z.

Euler measures are assigned, not derived from an embedding; they sum to
the Euler characteristic.  ``wound_model`` adds the two extra points and
the negative bigon produced by winding alpha_last once through the
z-region.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from .domains import Curve, CurveDiagram, DomainVector, Edge, Region, check_diagram

F = Fraction


def _names(n: int, g: int):
    last = n + 2 * g + 1
    return range(1, n + 1), range(n + 1, n + 2 * g + 1), last


def periodic_model(g: int, n: int, family: str = "beta", wound: bool = False) -> CurveDiagram:
    if g < 1 or n < 1:
        raise ValueError("g and n must be positive")
    b = family[0]
    small, mid, last = _names(n, g)
    SIG, S, Z = "R_Sigma", "R_S", "R_Z"
    regions = {
        SIG: Region(SIG, F(1, 2) - 2 * n - 2 * g),
        S: Region(S, F(-1 - 4 * g, 2) if wound else F(-1 - 2 * g)),
        Z: Region(Z, F(1, 4) if wound else F(1, 2), ("z",)),
    }
    if wound:
        regions["R_B"] = Region("R_B", F(1, 2))
        regions["R_A"] = Region("R_A", F(-3, 4))
    points: dict[str, tuple[str, str]] = {}
    corners: dict[tuple[str, str], int] = {}
    curves: dict[str, Curve] = {}

    def pt(name, a, c, counts):
        points[name] = (a, c)
        for reg, k in counts.items():
            corners[(reg, name)] = corners.get((reg, name), 0) + k

    A = lambda i: f"alpha{i}"  # noqa: E731
    B = lambda i: f"{family}{i}"  # noqa: E731

    for i in small:
        pt(f"y{i}", A(i), B(i), {SIG: 4})
        curves[A(i)] = Curve(A(i), "alpha", (Edge(SIG, SIG, f"y{i}", f"y{i}"),))
        curves[B(i)] = Curve(B(i), family, (Edge(SIG, SIG, f"y{i}", f"y{i}"),))
    for i in mid:
        x, x2 = f"x{i}", f"x'{i}"
        p, p2 = f"p{i}", f"p'{i}"  # alpha_last with b_i
        q, q2 = f"q{i}", f"q'{i}"  # alpha_i with b_last
        pt(x, A(i), B(i), {S: 4})
        pt(x2, A(i), B(i), {SIG: 4})
        for name, a, c in ((p, A(last), B(i)), (p2, A(last), B(i)), (q, A(i), B(last)), (q2, A(i), B(last))):
            pt(name, a, c, {SIG: 2, S: 2})
        curves[B(i)] = Curve(B(i), family, (
            Edge(S, S, x, p), Edge(SIG, SIG, p, x2), Edge(SIG, SIG, x2, p2), Edge(S, S, p2, x)))
        curves[A(i)] = Curve(A(i), "alpha", (
            Edge(S, S, x, q), Edge(SIG, SIG, q, x2), Edge(SIG, SIG, x2, q2), Edge(S, S, q2, x)))

    ps = [f"{k}{i}" for i in mid for k in ("p", "p'")]
    qs = [f"{k}{i}" for i in mid for k in ("q", "q'")]
    u, v = f"u_{b}", f"v_{b}"
    if not wound:
        pt(u, A(last), B(last), {Z: 1, S: 2, SIG: 1})
        pt(v, A(last), B(last), {Z: 1, S: 2, SIG: 1})
        a_tail = [(S, SIG, ps[-1], u), (Z, S, u, v), (S, SIG, v, ps[0])]
        b_tail = [(SIG, S, qs[-1], u), (S, Z, u, v), (SIG, S, v, qs[0])]
    else:
        u2, v2 = f"u'_{b}", f"v'_{b}"
        pt(u, A(last), B(last), {Z: 1, S: 2, SIG: 1})
        pt(v2, A(last), B(last), {"R_B": 1, Z: 2, S: 1})
        pt(u2, A(last), B(last), {"R_B": 1, Z: 1, "R_A": 1, S: 1})
        pt(v, A(last), B(last), {"R_A": 1, S: 2, SIG: 1})
        a_tail = [(S, SIG, ps[-1], u), (Z, S, u, v2), ("R_B", Z, v2, u2), ("R_A", S, u2, v), (S, SIG, v, ps[0])]
        b_tail = [(SIG, S, qs[-1], u), (S, Z, u, v2), (Z, "R_B", v2, u2), (S, "R_A", u2, v), (SIG, S, v, qs[0])]
    a_edges = [Edge(S, SIG, s, t) for s, t in zip(ps, ps[1:])] + [Edge(*e) for e in a_tail]
    b_edges = [Edge(SIG, S, s, t) for s, t in zip(qs, qs[1:])] + [Edge(*e) for e in b_tail]
    curves[A(last)] = Curve(A(last), "alpha", tuple(a_edges))
    curves[B(last)] = Curve(B(last), family, tuple(b_edges))
    chi = 2 - 2 * (n + 2 * g + 1)
    name = f"{'wound' if wound else 'periodic'}_{family}_g{g}_n{n}"
    return check_diagram(CurveDiagram(regions, points, corners, curves, chi, name))


def wound_model(g: int, n: int, family: str = "beta") -> CurveDiagram:
    return periodic_model(g, n, family, wound=True)


def model_domain(d: CurveDiagram) -> DomainVector:
    """The periodic domain with multiplicity 2 on R_Sigma and 1 on R_S."""
    mult = {r: F(0) for r in d.regions}
    mult["R_Sigma"], mult["R_S"] = F(2), F(1)
    if "R_B" in mult:
        mult["R_B"] = F(-1)
    return DomainVector(mult)


def generators(d: CurveDiagram, family: str = "beta"):
    """All generator tuples: one point on each alpha curve and each ``family`` curve."""
    alphas = sorted(c.name for c in d.family("alpha"))
    others = sorted(c.name for c in d.family(family))
    on = {}
    for p, (c1, c2) in d.points.items():
        a, c = (c1, c2) if c1.startswith("alpha") else (c2, c1)
        if c.startswith(family):
            on.setdefault((a, c), []).append(p)
    for perm in permutations(others):
        choices = [on.get((a, c)) for a, c in zip(alphas, perm)]
        if any(ch is None for ch in choices):
            continue
        yield from (tuple(sorted(t)) for t in product(*choices))


def is_bottom_form(x, family: str = "beta") -> bool:
    """y's, every x^i, and exactly one of u, v."""
    b = family[0]
    others = [p for p in x if not p.startswith("y")]
    uv = [p for p in others if p in (f"u_{b}", f"v_{b}")]
    rest = [p for p in others if p not in uv]
    return len(uv) == 1 and all(p.startswith("x") and not p.startswith("x'") for p in rest)


def affine_fit(values: dict[tuple[int, int], Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (a, b, c) of a g + b n + c through the (g, n) samples; raises if not affine."""
    v = {k: F(x) for k, x in values.items()}
    a = v[(2, 1)] - v[(1, 1)]
    b = v[(1, 2)] - v[(1, 1)]
    c = v[(1, 1)] - a - b
    for (g, n), x in v.items():
        if a * g + b * n + c != x:
            raise ValueError(f"samples are not affine in (g, n) at {(g, n)}")
    return a, b, c


# -- toy diagrams -----------------------------------------------------------


def torus_s3() -> CurveDiagram:
    """One alpha and one beta on a torus meeting once."""
    regions = {"R": Region("R", F(0), ("z",))}
    points = {"p": ("alpha", "beta")}
    corners = {("R", "p"): 4}
    curves = {"alpha": Curve("alpha", "alpha", (Edge("R", "R", "p", "p"),)),
              "beta": Curve("beta", "beta", (Edge("R", "R", "p", "p"),))}
    return check_diagram(CurveDiagram(regions, points, corners, curves, 0, "torus_s3"))


def s1xs2() -> CurveDiagram:
    """Isotopic alpha and beta on a torus meeting twice; two bigons."""
    regions = {"B1": Region("B1", F(1, 2)), "B2": Region("B2", F(1, 2)),
               "R": Region("R", F(-1), ("z",))}
    points = {"a": ("alpha", "beta"), "b": ("alpha", "beta")}
    corners = {("B1", "a"): 1, ("B2", "a"): 1, ("R", "a"): 2,
               ("B1", "b"): 1, ("B2", "b"): 1, ("R", "b"): 2}
    curves = {"alpha": Curve("alpha", "alpha", (Edge("B1", "R", "a", "b"), Edge("R", "B2", "b", "a"))),
              "beta": Curve("beta", "beta", (Edge("R", "B1", "a", "b"), Edge("B2", "R", "b", "a")))}
    return check_diagram(CurveDiagram(regions, points, corners, curves, 0, "s1xs2"))


def parallel_annuli() -> CurveDiagram:
    """Disjoint parallel alpha and beta on a torus: two annuli, no intersection points."""
    regions = {"A1": Region("A1", F(0), ("z",)), "A2": Region("A2", F(0))}
    curves = {"alpha": Curve("alpha", "alpha", (Edge("A1", "A2"),)),
              "beta": Curve("beta", "beta", (Edge("A2", "A1"),))}
    return check_diagram(CurveDiagram(regions, {}, {}, curves, 0, "parallel_annuli"))


def triple_toy() -> CurveDiagram:
    """Torus with alpha vertical, beta horizontal and gamma a small wiggle of beta."""
    regions = {"T1": Region("T1", F(1, 4)), "T2": Region("T2", F(1, 4)),
               "L3": Region("L3", F(1, 2)), "R": Region("R", F(-1), ("z",))}
    points = {"p": ("alpha", "beta"), "q": ("alpha", "gamma"),
              "s1": ("beta", "gamma"), "s2": ("beta", "gamma")}
    corners = {("T1", "p"): 1, ("T2", "p"): 1, ("R", "p"): 2,
               ("T1", "q"): 1, ("T2", "q"): 1, ("R", "q"): 2,
               ("T1", "s1"): 1, ("L3", "s1"): 1, ("R", "s1"): 2,
               ("T2", "s2"): 1, ("L3", "s2"): 1, ("R", "s2"): 2}
    curves = {
        "alpha": Curve("alpha", "alpha", (Edge("T1", "T2", "p", "q"), Edge("R", "R", "q", "p"))),
        "beta": Curve("beta", "beta", (Edge("T1", "R", "s1", "p"), Edge("T2", "R", "p", "s2"),
                                       Edge("R", "L3", "s2", "s1"))),
        "gamma": Curve("gamma", "gamma", (Edge("R", "T1", "s1", "q"), Edge("R", "T2", "q", "s2"),
                                          Edge("L3", "R", "s2", "s1"))),
    }
    return check_diagram(CurveDiagram(regions, points, corners, curves, 0, "triple_toy"))


def toy_diagrams() -> dict[str, CurveDiagram]:
    return {d.name: d for d in (torus_s3(), s1xs2(), parallel_annuli(), triple_toy())}
