"""Regenerate the shipped grid fixtures.  Run from the repository root."""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from cable import bundle_zigzags, m_copy  # noqa: E402

from gridhf.grid import (  # noqa: E402
    StabilizationKind, classical_invariants, connected_sum, dumps_grid, grid, reverse, stabilize,
)

OUT = Path("src/gridhf/fixtures")


def write(name: str, d, notes: list[str]) -> None:
    ci = classical_invariants(d)
    head = [f"# {line}" for line in notes]
    head.append(f"# n={d.n} tb={ci.tb} r={ci.r} sl={ci.sl}")
    (OUT / name).write_text("\n".join(head) + "\n" + dumps_grid(d))


def neg(d, k):
    for _ in range(k):
        d = stabilize(d, StabilizationKind.NEGATIVE)
    return d


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    unknot = grid((0, 1), (1, 0))
    trefoil = grid((2, 3, 4, 0, 1), (4, 0, 1, 2, 3))
    sixone = grid((7, 0, 5, 4, 6, 3, 1, 2), (3, 6, 1, 7, 2, 0, 4, 5))
    t25 = grid(tuple((c + 1) % 7 for c in range(7)), tuple((c + 3) % 7 for c in range(7)))
    l1 = bundle_zigzags(m_copy(trefoil, 3), 3, 1, [(2, 0)])
    cand = reverse(bundle_zigzags(m_copy(trefoil, 3), 3, 1, [(2, 1), (1, 0)]))

    write("unknot2.grid", unknot, ["Legendrian unknot with maximal tb."])
    write("trefoil_rh.grid", trefoil, [
        "Right-handed trefoil, maximal tb.  Torus grid o[c]=c+2, x[c]=c-1 mod 5.",
        "Legendrian type is the mirror of the grid knot (see grid.py)."])
    write("sixone_tbmax.grid", sixone, [
        "6_1 with maximal tb, found by random search over 8x8 grids filtered on",
        "(tb, r) = (-5, 0) and |Delta(-1)| = 9; knot type confirmed with SnapPy identify()."])
    write("torus_2_5_tbmax.grid", t25, [
        "Right-handed T(2,5), maximal tb = 3.  Torus grid o[c]=c+1, x[c]=c+3 mod 7."])
    write("k1_substitute.grid", neg(t25, 1), [
        "One negative stabilization of torus_2_5_tbmax.grid: (tb, r) = (2, -1) with a",
        "nonvanishing canonical class.  Stands in for K1 in the obstruction pipeline."])
    write("cable_l1.grid", l1, [
        "(3,2)-cable of the right-handed trefoil, the (3,2;3,2) iterated torus knot.",
        "Three parallel copies of trefoil_rh.grid (tools/cable.py m_copy) with one",
        "negative 1/3 twist realised by zigzagging one strand of a column bundle",
        "(tools/cable.py bundle_zigzags).  |Delta(-1)| = 9 matches the cable."])
    write("k2_sum.grid", connected_sum(l1, sixone), [
        "connected_sum(cable_l1.grid, sixone_tbmax.grid)."])
    write("cable_5_2_candidate.grid", cand, [
        "A (5, 2) Legendrian with the same |Delta(-1)| = 9 as the iterated torus knot:",
        "two zigzags in one bundle, orientation reversed.  Its canonical class",
        "vanishes (theta finds a one-state bounding chain), so it cannot play K1."])
    write("k1_full.grid", neg(cand, 3), [
        "Three negative stabilizations of cable_5_2_candidate.grid; (tb, r) = (2, -1)",
        "but the canonical class vanishes."])


def write_domains() -> None:
    from gridhf.domain_fixtures import periodic_model, toy_diagrams, wound_model
    from gridhf.domains import dumps_diagram

    out = OUT / "domains"
    out.mkdir(exist_ok=True)
    diagrams = list(toy_diagrams().values())
    for g in (1, 2):
        for n in (1, 2):
            diagrams += [periodic_model(g, n), periodic_model(g, n, "gamma"), wound_model(g, n)]
    for d in diagrams:
        (out / f"{d.name}.json").write_text(dumps_diagram(d) + "\n")


if __name__ == "__main__":
    main()
    write_domains()
