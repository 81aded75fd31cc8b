"""Command-line interface.

Exit codes: 0 all pass, 1 any failure, 2 any unknown verdict without a
failure, 3 usage or integrity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import IntegrityError, catalog_names, load_group_file
from .checks import Budgets, analyze, check_ids, corpus_scan, run_check
from .graph import (
    CertificateError,
    CliqueCertificate,
    CocliqueCertificate,
    validate_clique,
    validate_coclique,
)
from .group import BudgetError
from .numth import (
    bertrand_mid_prime,
    cyclotomic_value,
    greatest_prime_factor,
    mod_dominance_classify,
    phi_star,
    power_vs_factorial,
    primitive_prime_divisors,
    radical,
    sylvester_prime,
)
from .perm import Permutation
from .semireg import SemiregularWitness, WitnessError, validate_semiregular


def _budgets_from(args) -> Budgets:
    b = Budgets()
    if getattr(args, "budget_elems", None):
        b.elements = args.budget_elems
    if getattr(args, "budget_nodes", None):
        b.nodes = args.budget_nodes
    if getattr(args, "budget_degree", None):
        b.degree = args.budget_degree
    return b


def _add_budget_flags(p) -> None:
    p.add_argument("--budget-elems", type=int, help="element enumeration budget")
    p.add_argument("--budget-nodes", type=int, help="search node budget")
    p.add_argument("--budget-degree", type=int, help="coset action degree budget")


def cmd_analyze(args) -> int:
    try:
        report = analyze(args.group, _budgets_from(args), deep=args.deep)
    except (IntegrityError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_density(args) -> int:
    from .graph import density_bounds

    try:
        path = Path(args.group)
        gf = load_group_file(path) if path.exists() else __import__(
            "drg.catalog", fromlist=["catalog_load"]).catalog_load(args.group)
        rep = density_bounds(gf.group, _budgets_from(args).nodes,
                             _budgets_from(args).elements)
    except (IntegrityError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(rep.to_json_dict(), indent=2, sort_keys=True))
    return 0 if rep.status == "ok" else 2


def cmd_verify(args) -> int:
    ids = check_ids() if args.check == "all" else [args.check]
    budgets = _budgets_from(args)
    worst = 0
    for check_id in ids:
        try:
            report = run_check(check_id, budgets)
        except Exception as exc:  # unregistered id, data trouble
            print(f"ERROR   {check_id}: {exc}", file=sys.stderr)
            return 3
        tag = {"pass": "PASS", "fail": "FAIL", "unknown": "UNKNOWN"}[report.verdict]
        print(f"{tag:8s}{check_id}  ({report.wall_time_s:.2f}s)  {report.detail}".rstrip())
        if args.json:
            print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
        if report.verdict == "fail":
            worst = 1
        elif report.verdict == "unknown" and worst == 0:
            worst = 2
    return worst


def cmd_corpus(args) -> int:
    result = corpus_scan(args.directory, _budgets_from(args), use_cache=not args.no_cache)
    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        cols = ("name", "degree", "order", "transitive", "primitive",
                "derangement_count", "clique_lower_bound", "max_semiregular_order",
                "elusive", "integrity")
        print("\t".join(cols))
        for row in result["rows"]:
            print("\t".join(str(row.get(c, "")) for c in cols))
    return 3 if result["integrity_failures"] else 0


def cmd_numth(args) -> int:
    op = args.operation
    vals = args.args
    try:
        if op == "radical":
            print(radical(int(vals[0])))
        elif op == "gpf":
            print(greatest_prime_factor(int(vals[0])))
        elif op == "ppd":
            r = primitive_prime_divisors(int(vals[0]), int(vals[1]))
            print(json.dumps({"q": r.q, "t": r.t,
                              "primitive_divisors": list(r.primitive_divisors),
                              "exceptional": r.exceptional}))
        elif op == "cyclotomic":
            print(cyclotomic_value(int(vals[0]), int(vals[1])))
        elif op == "phi-star":
            print(phi_star(int(vals[0]), int(vals[1])))
        elif op == "sylvester":
            print(sylvester_prime(int(vals[0]), int(vals[1])))
        elif op == "bertrand":
            print(bertrand_mid_prime(int(vals[0])))
        elif op == "dominance":
            for m, ell in mod_dominance_classify(int(vals[0])):
                print(f"{m}\t{ell}")
        elif op == "power-factorial":
            print(power_vs_factorial(int(vals[0])))
        else:
            print(f"unknown operation {op!r}", file=sys.stderr)
            return 3
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_verify_cert(args) -> int:
    try:
        payload = json.loads(Path(args.file).read_text())
        kind = payload["type"]
        if kind in ("clique", "coclique"):
            vertices = [Permutation(v) for v in payload["vertices"]]
            if kind == "clique":
                validate_clique(CliqueCertificate(vertices),
                                require_identity=payload.get("require_identity", True))
            else:
                validate_coclique(CocliqueCertificate(vertices))
        elif kind == "semiregular":
            gens = [Permutation(v) for v in payload["generators"]]
            witness = SemiregularWitness(payload.get("group", ""), gens,
                                         payload["order"], payload.get("method", "catalog"))
            validate_semiregular(witness, payload["degree"])
        else:
            print(f"unknown certificate type {kind!r}", file=sys.stderr)
            return 3
    except (KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: bad certificate file: {exc}", file=sys.stderr)
        return 3
    except (CertificateError, WitnessError) as exc:
        print(f"INVALID: {exc}")
        return 1
    print("VALID")
    return 0


def cmd_catalog(args) -> int:
    for name in catalog_names():
        print(name)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="drg",
        description="Derangement graphs of transitive permutation groups: "
                    "cliques, intersection density, semiregular subgroups.",
    )
    parser.add_argument("--version", action="version", version=f"drg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a group file or catalog name")
    p.add_argument("group")
    p.add_argument("--deep", action="store_true", help="include density bounds")
    _add_budget_flags(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("density", help="intersection density bounds")
    p.add_argument("group")
    _add_budget_flags(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("verify", help="run a named check (or: all)")
    p.add_argument("check")
    p.add_argument("--json", action="store_true", help="print full reports")
    _add_budget_flags(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("corpus", help="scan a directory of group files")
    p.add_argument("directory")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-cache", action="store_true")
    _add_budget_flags(p)
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("numth", help="number theory operations")
    p.add_argument("operation",
                   choices=["radical", "gpf", "ppd", "cyclotomic", "phi-star",
                            "sylvester", "bertrand", "dominance", "power-factorial"])
    p.add_argument("args", nargs="*")
    p.set_defaults(fn=cmd_numth)

    p = sub.add_parser("verify-cert", help="re-validate a serialized certificate")
    p.add_argument("file")
    p.set_defaults(fn=cmd_verify_cert)

    p = sub.add_parser("catalog", help="list shipped catalog groups")
    p.set_defaults(fn=cmd_catalog)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
