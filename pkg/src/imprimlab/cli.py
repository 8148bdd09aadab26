"""Command-line interface.

Subcommands: systems, nonrefinable, theorem, example21, census, inclusion,
maxsolv, blocks.  Every run emits a JSON document on stdout and a short
human summary on stderr (suppressed by --json-only).  Exit codes: 0 all
claims pass (or query succeeded), 1 claim failure, 2 usage or validation
error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CapError, ImprimlabError
from .groups import DEFAULT_CAP_ELEMENTS
from .descriptions import parse_group
from .imprim import (
    DEFAULT_CAP_SUBSPACES,
    all_systems,
    is_refinement,
)
from .verify import (
    VerificationReport,
    induced_example_report,
    maximal_solvable_witness,
    regression_theorem_instances,
    wreath_inclusion_report,
    wreath_uniqueness_report,
)
from .wreath import WreathSpec, expected_exceptional_systems

QUERY_SCHEMA = "imprimlab-query/1"

EXIT_OK = 0
EXIT_CLAIM_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _load_document(path: str, where: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ImprimlabError(f"{where}: cannot read {path} ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise ImprimlabError(f"{where}: invalid JSON in {path} ({exc})") from exc


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--cap-elements", type=int, default=DEFAULT_CAP_ELEMENTS,
        help="maximum group order enumerated (default %(default)s)",
    )
    common.add_argument(
        "--cap-subspaces", type=int, default=DEFAULT_CAP_SUBSPACES,
        help="maximum subspaces scanned per dimension (default %(default)s)",
    )
    common.add_argument(
        "--json-only", action="store_true",
        help="suppress the human-readable summary on stderr",
    )
    common.add_argument(
        "--seed-free", action="store_true",
        help="assert that no randomness is used (always true; provided for CI)",
    )
    common.add_argument(
        "--threads", type=int,
        default=int(os.environ.get("IMPRIMLAB_THREADS", "1")),
        help="worker bound; execution is deterministic regardless",
    )

    parser = argparse.ArgumentParser(
        prog="imprimlab",
        description="Systems of imprimitivity for matrix groups over prime fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("systems", parents=[common],
                       help="list all systems of imprimitivity of a matrix group")
    p.add_argument("--group", required=True, help="group description JSON file")

    p = sub.add_parser("nonrefinable", parents=[common],
                       help="list only the nonrefinable systems")
    p.add_argument("--group", required=True)

    p = sub.add_parser("theorem", parents=[common],
                       help="verify the unique-nonrefinable-system dichotomy")
    p.add_argument("--h", dest="h_file", help="block group description (matrix kind)")
    p.add_argument("--k", dest="k_file", help="point group description (perm kind)")
    p.add_argument("--p", dest="modulus", type=int,
                   help="optional consistency check against the block group field")
    p.add_argument("--regression", action="store_true",
                   help="run every built-in regression instance instead")

    p = sub.add_parser("example21", parents=[common],
                       help="verify the induced degree-4 two-systems construction")
    p.add_argument("--q", type=int, required=True, help="target field, prime, 1 mod 6")

    p = sub.add_parser("census", parents=[common],
                       help="predicted systems of an exceptional wreath product")
    p.add_argument("--h", dest="h_file", required=True)
    p.add_argument("--k", dest="k_file", required=True)

    p = sub.add_parser("inclusion", parents=[common],
                       help="check wreath-in-wreath containment against conditions")
    p.add_argument("--h1", required=True)
    p.add_argument("--k1", required=True)
    p.add_argument("--h2", required=True)
    p.add_argument("--k2", required=True)

    p = sub.add_parser("maxsolv", parents=[common],
                       help="solvable overgroup witness for the monomial group")
    p.add_argument("--q", type=int, required=True, choices=[3, 5])

    p = sub.add_parser("blocks", parents=[common],
                       help="block systems of a permutation group")
    p.add_argument("--group", required=True, help="perm description JSON file")
    p.add_argument("--size", type=int, required=True)

    return parser


def _systems_payload(args, only_nonrefinable: bool):
    desc = parse_group(_load_document(args.group, "group"), "group")
    group = desc.build_matrix_group(cap=args.cap_elements)
    systems = all_systems(group, cap_subspaces=args.cap_subspaces)
    nonref_keys = {
        s.key
        for s in systems
        if not any(d != s and is_refinement(d, s) for d in systems)
    }
    rows = []
    for s in systems:
        flag = s.key in nonref_keys
        if only_nonrefinable and not flag:
            continue
        rows.append(
            {
                "component_dim": s.component_dim,
                "component_count": s.component_count,
                "nonrefinable": flag,
                "parts": s.to_rows(),
            }
        )
    payload = {
        "schema": QUERY_SCHEMA,
        "command": "nonrefinable" if only_nonrefinable else "systems",
        "degree": group.n,
        "p": group.p,
        "systems": rows,
    }
    summary = [f"{payload['command']}: {len(rows)} system(s) listed"]
    return payload, EXIT_OK, summary


def _wreath_spec_from_files(args):
    h = parse_group(_load_document(args.h_file, "h"), "h").build(args.cap_elements)
    k = parse_group(_load_document(args.k_file, "k"), "k").build(args.cap_elements)
    return WreathSpec(h, k)


def _report_payload(report: VerificationReport):
    code = EXIT_OK if report.passed else EXIT_CLAIM_FAILURE
    return report.to_dict(), code, report.summary_lines()


def _theorem(args):
    if args.regression:
        named = [
            (name, wreath_uniqueness_report(spec, args.cap_elements, args.cap_subspaces))
            for name, spec in regression_theorem_instances(args.cap_elements)
        ]
        payload = {
            "schema": QUERY_SCHEMA,
            "command": "theorem-regression",
            "reports": [dict(r.to_dict(), name=name) for name, r in named],
            "pass": all(r.passed for _, r in named),
        }
        summary = [f"{name}: {'PASS' if r.passed else 'FAIL'}" for name, r in named]
        code = EXIT_OK if payload["pass"] else EXIT_CLAIM_FAILURE
        return payload, code, summary
    if not args.h_file or not args.k_file:
        raise ImprimlabError("theorem requires --h and --k (or --regression)")
    spec = _wreath_spec_from_files(args)
    if args.modulus is not None and args.modulus != spec.p:
        raise ImprimlabError(
            f"--p {args.modulus} disagrees with the block group field {spec.p}"
        )
    return _report_payload(
        wreath_uniqueness_report(spec, args.cap_elements, args.cap_subspaces)
    )


def _census(args):
    spec = _wreath_spec_from_files(args)
    census = expected_exceptional_systems(spec)
    payload = {
        "schema": QUERY_SCHEMA,
        "command": "census",
        "p": census.p,
        "pair_systems": [b.one_based() for b in census.pair_systems],
        "lambdas": census.lambdas,
        "count": census.count,
        "systems": [s.to_rows() for s in census.systems],
    }
    summary = [
        f"census: {census.count} system(s) from "
        f"{len(census.pair_systems)} pair partition(s), lambdas {census.lambdas}"
    ]
    return payload, EXIT_OK, summary


def _inclusion(args):
    h1 = parse_group(_load_document(args.h1, "h1"), "h1").build(args.cap_elements)
    k1 = parse_group(_load_document(args.k1, "k1"), "k1").build(args.cap_elements)
    h2 = parse_group(_load_document(args.h2, "h2"), "h2").build_matrix_group(
        args.cap_elements
    )
    k2 = parse_group(_load_document(args.k2, "k2"), "k2").build(args.cap_elements)
    return _report_payload(
        wreath_inclusion_report(h1, k1, h2, k2, args.cap_elements)
    )


def _blocks(args):
    group = parse_group(_load_document(args.group, "group"), "group").build(
        args.cap_elements
    )
    systems = group.block_systems(args.size)
    payload = {
        "schema": QUERY_SCHEMA,
        "command": "blocks",
        "degree": group.degree,
        "block_size": args.size,
        "systems": [b.one_based() for b in systems],
    }
    return payload, EXIT_OK, [f"blocks: {len(systems)} system(s) of size {args.size}"]


def run_command(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        if args.command == "systems":
            payload, code, summary = _systems_payload(args, only_nonrefinable=False)
        elif args.command == "nonrefinable":
            payload, code, summary = _systems_payload(args, only_nonrefinable=True)
        elif args.command == "theorem":
            payload, code, summary = _theorem(args)
        elif args.command == "example21":
            payload, code, summary = _report_payload(
                induced_example_report(args.q, args.cap_elements, args.cap_subspaces)
            )
        elif args.command == "census":
            payload, code, summary = _census(args)
        elif args.command == "inclusion":
            payload, code, summary = _inclusion(args)
        elif args.command == "maxsolv":
            payload, code, summary = _report_payload(
                maximal_solvable_witness(args.q, args.cap_elements)
            )
        else:
            payload, code, summary = _blocks(args)
    except CapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ImprimlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    if not args.json_only:
        for line in summary:
            print(line, file=sys.stderr)
    return code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
