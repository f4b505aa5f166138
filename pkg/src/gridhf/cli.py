"""Command-line interface: ``gridhf <subcommand> ...``.

Exit codes: 0 success, 2 usage, 3 unreadable or invalid input,
4 capacity exceeded, 5 internal convention failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import __version__
from .concordance import THREADS_ENV, batch_report, obstruct, obstruct_stabilized, read_pairs_file
from .domains import (
    DomainError, check_diagram, domain_to_json, is_weakly_admissible, periodic_domain_basis, read_diagram,
)
from .floer import DEFAULT_CAP, CapacityError, hat_ranks, homology, is_symmetric, is_thin
from .grid import GridError, classical_invariants, read_grid, validate, GridDiagram
from .legendrian import ConventionError, dumps_report, invariants_report, tau, theta

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CAPACITY, EXIT_INTERNAL = 0, 2, 3, 4, 5


def _bool(v) -> str:
    return "null" if v is None else str(v).lower()


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_raw(path: str) -> GridDiagram:
    try:
        return read_grid(path)
    except OSError as exc:
        raise GridError("parse", f"cannot read {path}: {exc.strerror or exc}") from None


def _load(path: str) -> GridDiagram:
    d = _read_raw(path)
    rep = validate(d)
    if not rep.valid:
        raise GridError(rep.errors[0], f"{path}: " + "; ".join(rep.messages))
    return d


def cmd_validate(args) -> int:
    status = EXIT_OK
    for path in args.files:
        rep = validate(_read_raw(path))
        if not rep.valid:
            status = EXIT_PARSE
        if args.format == "json":
            _emit({"file": path, "valid": rep.valid, "errors": list(rep.errors),
                   "components": rep.components, "messages": list(rep.messages)})
        else:
            detail = "valid" if rep.valid else "invalid\t" + ",".join(rep.errors) + "\t" + "; ".join(rep.messages)
            print(f"{path}\t{detail}")
    return status


def cmd_invariants(args) -> int:
    d = _load(args.file)
    if args.full:
        report = invariants_report(d, args.cap, args.max_states)
        if args.format == "json":
            sys.stdout.write(dumps_report(report) + "\n")
        else:
            print(" ".join(f"{k}={_bool(v) if isinstance(v, bool) or v is None else v}"
                           for k, v in report.items()))
        return EXIT_OK
    ci = classical_invariants(d)
    if args.format == "json":
        _emit(asdict(ci))
    else:
        print(f"tb={ci.tb} r={ci.r} sl={ci.sl}")
    return EXIT_OK


def cmd_hfk(args) -> int:
    t = homology(_load(args.file), args.cap)
    if args.hat:
        ranks = hat_ranks(t)
        if args.format == "json":
            _emit({"ranks": [{"M": m, "2A": a2, "rank": r} for (m, a2), r in sorted(ranks.items())]})
        else:
            for (m, a2), r in sorted(ranks.items()):
                print(f"{m}\t{a2}\t{r}")
        return EXIT_OK
    if args.format == "json":
        data = t.to_json()
        data.update(total=t.total, thin=is_thin(t), symmetric=is_symmetric(t))
        _emit(data)
    else:
        sys.stdout.write(t.to_tsv())
    return EXIT_OK


def cmd_theta(args) -> int:
    v = theta(_load(args.file), args.sign, args.max_states)
    if args.format == "json":
        _emit(v.to_json())
    else:
        print(f"vanishes={_bool(v.vanishes)}")
    return EXIT_OK


def cmd_tau(args) -> int:
    res = tau(_load(args.file), args.cap)
    if args.format == "json":
        _emit({"tau": res.tau, "certificate": [list(c) for c in res.certificate]})
    else:
        print(f"tau={res.tau}")
    return EXIT_OK


def cmd_obstruct(args) -> int:
    k1, k2 = _load(args.k1), _load(args.k2)
    if args.depth is None:
        v = obstruct(k1, k2, args.max_states)
        if args.format == "json":
            _emit(v.to_json())
        else:
            print(v.kind)
        return EXIT_OK
    rows = obstruct_stabilized(k1, k2, args.depth, args.max_states)
    if args.format == "json":
        _emit([{"i": r.i, "j": r.j, **r.verdict.to_json()} for r in rows])
    else:
        for r in rows:
            print(f"{r.i}\t{r.j}\t{r.verdict.kind}")
    return EXIT_OK


def cmd_obstruct_batch(args) -> int:
    try:
        pairs = read_pairs_file(args.pairs)
    except OSError as exc:
        raise GridError("parse", f"cannot read {args.pairs}: {exc.strerror or exc}") from None
    report = batch_report(pairs, args.max_states)
    sys.stdout.write(report.dumps() if args.format == "json" else report.to_tsv())
    codes = report.error_codes()
    for code, status in (("parse", EXIT_PARSE), ("capacity", EXIT_CAPACITY), ("internal", EXIT_INTERNAL)):
        if code in codes:
            return status
    return EXIT_OK


def cmd_domains_check(args) -> int:
    try:
        d = check_diagram(read_diagram(args.file))
    except OSError as exc:
        raise DomainError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    families = tuple(args.families.split(",")) if args.families else ("alpha", "beta", "gamma")
    basis = periodic_domain_basis(d, families)
    adm = is_weakly_admissible(d, basis)
    if args.format == "json":
        _emit({
            "name": d.name,
            "basis": [{"domain": domain_to_json(b.domain), "boundary": b.boundary} for b in basis],
            "admissible": adm.admissible,
            "witness": None if adm.witness_domain is None else domain_to_json(adm.witness_domain),
        })
    else:
        print(f"name={d.name} basis={len(basis)} admissible={_bool(adm.admissible)}")
        for b in basis:
            print("\t".join(f"{r}={m}" for r, m in sorted(b.domain.mult.items())))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--cap", type=int, default=None,
                        help=f"largest grid size for full-complex computations (default {DEFAULT_CAP})")
    common.add_argument("--max-states", type=int, default=None,
                        help="state budget for the canonical-class search")

    p = argparse.ArgumentParser(prog="gridhf", description=__doc__.splitlines()[0],
                                epilog=f"Batch worker threads: ${THREADS_ENV} (default: all cores).")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check grid files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", parents=[common], help="tb, r, sl (and more with --full)")
    s.add_argument("file")
    s.add_argument("--full", action="store_true", help="add theta, tau and thinness")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("hfk", parents=[common], help="bigraded homology of the blocked complex")
    s.add_argument("file")
    s.add_argument("--hat", action="store_true", help="divide out the size-dependent factor")
    s.set_defaults(func=cmd_hfk)

    s = sub.add_parser("theta", parents=[common], help="does the canonical class vanish")
    s.add_argument("file")
    s.add_argument("--sign", choices=("plus", "minus"), default="plus")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("tau", parents=[common], help="concordance invariant tau")
    s.add_argument("file")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("obstruct", parents=[common], help="obstruct a concordance from K1 to K2")
    s.add_argument("k1")
    s.add_argument("k2")
    s.add_argument("--depth", type=int, default=None,
                   help="also try all pairs of up to DEPTH negative stabilizations")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("obstruct-batch", parents=[common],
                       help="obstruct every pair listed in a file (two paths per line)")
    s.add_argument("pairs")
    s.set_defaults(func=cmd_obstruct_batch)

    s = sub.add_parser("domains-check", parents=[common], help="periodic domains and admissibility")
    s.add_argument("file")
    s.add_argument("--families", default=None, help="comma-separated curve families")
    s.set_defaults(func=cmd_domains_check)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "depth", None) is not None and args.depth < 0:
            parser.error("--depth must be nonnegative")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GridError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConventionError, ValueError) as exc:
        print(f"internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
