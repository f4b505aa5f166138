"""Acceptance criteria 1-5.  Each test prints one PASS/FAIL line (shown even without -s)."""

from __future__ import annotations

import random
import time

import pytest

from conftest import LARGE, SMALL, load
from oracles import (
    admissible_brute_force, alexander_oracle, bigrading_oracle, laurent_times_smearing, random_grid,
)
from gridhf import fixture_path
from gridhf.concordance import NOT_OBSTRUCTED, OBSTRUCTED_THETA, obstruct
from gridhf.domain_fixtures import generators, is_bottom_form, model_domain, toy_diagrams
from gridhf.domains import (
    chern_pairing, euler_measure, is_weakly_admissible, periodic_domain_basis, read_diagram, winding_bound,
)
from gridhf.floer import (
    CapacityError, boundary_squared_is_zero, differential, euler_characteristic, homology, is_symmetric, is_thin,
)
from gridhf.grid import can_commute_columns, classical_invariants, commute_columns, connected_sum, stabilize_at
from gridhf.legendrian import canonical_state, tau, theta, thin_shortcut

GN = [(g, n) for g in (1, 2) for n in (1, 2)]


def report(capsys, k, failures, detail):
    status = "PASS" if not failures else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {k}: {status}  {detail}")
        for f in failures:
            print(f"    - {f}")
    assert not failures, failures


def test_criterion_1_sixone(capsys):
    start = time.perf_counter()
    d = load("sixone_tbmax")
    ci = classical_invariants(d)
    table = homology(d)
    v = theta(d, "plus")
    t = tau(d).tau
    shortcut = thin_shortcut(d)
    elapsed = time.perf_counter() - start
    failures = []
    if (ci.tb, ci.r, ci.sl) != (-5, 0, -5):
        failures.append(f"(tb, r, sl) = {(ci.tb, ci.r, ci.sl)}")
    if not is_thin(table):
        failures.append("not thin")
    if t != 0:
        failures.append(f"tau = {t}")
    if v.vanishes is not True:
        failures.append(f"theta vanishes = {v.vanishes}")
    if shortcut != "zero":
        failures.append(f"thin_shortcut = {shortcut}")
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f} s")
    report(capsys, 1, failures, f"6_1: (tb,r,sl)=(-5,0,-5) thin tau=0 theta=0 shortcut=zero [{elapsed:.2f} s]")


def test_criterion_2_trefoil(capsys):
    start = time.perf_counter()
    d = load("trefoil_rh")
    ci = classical_invariants(d)
    t = tau(d).tau
    v = theta(d, "plus")
    shortcut = thin_shortcut(d)
    elapsed = time.perf_counter() - start
    failures = []
    if t != 1:
        failures.append(f"tau = {t}")
    if ci.sl != 1 or ci.sl != 2 * t - 1:
        failures.append(f"sl = {ci.sl}, 2 tau - 1 = {2 * t - 1}")
    if v.vanishes is not False:
        failures.append(f"theta vanishes = {v.vanishes}")
    if shortcut != "nonzero":
        failures.append(f"thin_shortcut = {shortcut}")
    if elapsed >= 1:
        failures.append(f"runtime {elapsed:.2f} s")
    report(capsys, 2, failures, f"trefoil: tau=1 sl=1=2tau-1 theta!=0 shortcut agrees [{elapsed:.2f} s]")


def test_criterion_3_obstruction_pipeline(capsys):
    """Degraded form: no grid of the non-destabilizable (5,2) representative is available.

    K1 is replaced by a substitute with (2, -1) and nonvanishing class; K2 is
    built from the shipped cable and 6_1 grids by connected_sum.  The
    constructed (5,2) candidate and its stabilization are reported as well.
    """
    start = time.perf_counter()
    k1 = load("k1_substitute")
    k2 = connected_sum(load("cable_l1"), load("sixone_tbmax"))
    failures = []
    if k2 != load("k2_sum"):
        failures.append("k2_sum.grid differs from connected_sum(cable_l1, sixone_tbmax)")
    v = obstruct(k1, k2)
    for side, e in (("K1", v.k1), ("K2", v.k2)):
        if (e.tb, e.r) != (2, -1):
            failures.append(f"{side} (tb, r) = {(e.tb, e.r)}")
    if v.k1.theta_plus_vanishes is not False:
        failures.append("substitute K1 class not verified nonzero")
    if v.k2.theta_plus_vanishes is not True:
        failures.append("K2 class not verified zero")
    if v.kind != OBSTRUCTED_THETA:
        failures.append(f"verdict {v.kind}")
    elapsed = time.perf_counter() - start
    full = obstruct(load("k1_full"), k2)
    with capsys.disabled():
        print(f"\n    info: constructed (5,2) candidate stabilized thrice vs K2 -> {full.kind}"
              f" (its class vanishes; it is not the representative the full form needs)")
    assert full.kind == NOT_OBSTRUCTED
    report(capsys, 3, failures,
           f"degraded form: substitute K1 vs K2=L1#6_1, both (2,-1) -> {v.kind} [{elapsed:.2f} s]")


def test_criterion_4_property_suites(capsys):
    start = time.perf_counter()
    failures = []
    rng = random.Random(20261018)

    bad = 0
    for _ in range(200):
        d = random_grid(rng, rng.randint(2, 6))
        bad += not boundary_squared_is_zero(differential(d))
    if bad:
        failures.append(f"d^2 != 0 on {bad}/200 random grids")

    for name in SMALL + LARGE:
        d = load(name)
        try:
            table = homology(d)
        except CapacityError:
            failures.append(f"{name} (n={d.n}): homology beyond capacity, symmetry and Euler characteristic not checked")
            continue
        if not is_symmetric(table):
            failures.append(f"{name}: homology not symmetric")
        chi = {a2 // 2: c for a2, c in euler_characteristic(table).items()}
        if chi != laurent_times_smearing(alexander_oracle(d), d.n):
            failures.append(f"{name}: Euler characteristic differs from the Alexander oracle")

    bad = 0
    for _ in range(200):
        d = random_grid(rng, rng.randint(2, 6))
        ci = classical_invariants(d)
        m, a2 = bigrading_oracle(d, canonical_state(d, "plus"))
        bad += not (m == a2 == ci.tb - ci.r + 1)
    if bad:
        failures.append(f"M(x+) = 2A(x+) = tb - r + 1 fails on {bad}/200 grids")

    bad = 0
    for _ in range(50):
        d = random_grid(rng, rng.randint(2, 7))
        v = theta(d).vanishes
        moved = [stabilize_at(d, c, "ne") for c in range(d.n)]
        moved += [commute_columns(d, c) for c in range(d.n) if can_commute_columns(d, c)]
        bad += any(theta(e).vanishes != v for e in moved)
    if bad:
        failures.append(f"theta not invariant on {bad}/50 grids")

    pairs = [(a, b) for a in SMALL for b in SMALL if load(a).n + load(b).n - 1 <= 9]
    bad = [(a, b) for a, b in pairs
           if theta(connected_sum(load(a), load(b))).vanishes != (theta(load(a)).vanishes or theta(load(b)).vanishes)]
    if bad:
        failures.append(f"connected-sum rule fails on {bad}")

    elapsed = time.perf_counter() - start
    report(capsys, 4, failures, f"property suites over {len(pairs)} fixture pairs and 450 random grids [{elapsed:.1f} s]")


def _timed(label, fn, failures, times):
    start = time.perf_counter()
    ok = fn()
    times[label] = time.perf_counter() - start
    if not ok:
        failures.append(f"{label}: wrong result")
    if times[label] >= 1:
        failures.append(f"{label}: {times[label]:.2f} s")


def test_criterion_5_domain_calculus(capsys):
    models = {(g, n): read_diagram(fixture_path(f"domains/periodic_beta_g{g}_n{n}.json")) for g, n in GN}

    def pairing():
        for (g, n), d in models.items():
            P = model_domain(d)
            for x in generators(d):
                value = chern_pairing(d, P, x)
                if is_bottom_form(x) != (value == 2 - 2 * g) or value < 2 - 2 * g:
                    return False
        return True

    def euler():
        return all(euler_measure(d, model_domain(d)) == -6 * g - 4 * n for (g, n), d in models.items())

    def admissibility():
        for d in toy_diagrams().values():
            fams = sorted({c.family for c in d.curves.values()})
            basis = periodic_domain_basis(d, fams)
            if is_weakly_admissible(d, basis).admissible != admissible_brute_force(basis):
                return False
        return True

    failures, times = [], {}
    _timed("chern_pairing", pairing, failures, times)
    _timed("euler_measure", euler, failures, times)
    _timed("winding_bound", lambda: winding_bound(2, 3) == 43, failures, times)
    _timed("admissibility", admissibility, failures, times)
    detail = " ".join(f"{k}={v:.3f}s" for k, v in times.items())
    report(capsys, 5, failures, f"domain calculus [{detail}]")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
