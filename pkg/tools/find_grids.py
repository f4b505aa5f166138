"""Dev-time random search for small fixture grids (trefoil, 6_1).

Usage: python3 tools/find_grids.py {trefoil|sixone} [seed]
"""

from __future__ import annotations

import random
import sys
import warnings

warnings.filterwarnings("ignore")
sys.path.insert(0, __file__.rsplit("/", 1)[0])

from knotid import det_at, identify  # noqa: E402

from gridhf.grid import GridDiagram, classical_invariants, validate  # noqa: E402

TARGETS = {
    # name: (n, tb, r, |det|, identification prefix)
    "trefoil": (5, 1, 0, 3, None),
    "sixone": (8, -5, 0, 9, "6_1"),
}


def search(name: str, seed: int = 0, tries: int = 10**7):
    n, tb, r, det, ident = TARGETS[name]
    rng = random.Random(seed)
    o = list(range(n))
    x = list(range(n))
    for _ in range(tries):
        rng.shuffle(o)
        rng.shuffle(x)
        d = GridDiagram(n, tuple(o), tuple(x))
        if not validate(d).valid:
            continue
        ci = classical_invariants(d)
        if (ci.tb, ci.r) != (tb, r):
            continue
        if abs(round(det_at(d, -1))) != det * 2 ** (n - 1):
            continue
        if ident is not None and not any(str(m).startswith(ident + "(") for m in identify(d)):
            continue
        return d
    return None


if __name__ == "__main__":
    name = sys.argv[1]
    d = search(name, int(sys.argv[2]) if len(sys.argv) > 2 else 0)
    print(d)
