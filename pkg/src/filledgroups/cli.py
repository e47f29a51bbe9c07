"""Command-line interface: ``filledgroups <subcommand> ...``.

Exit status: 0 success, 2 usage error, 3 invalid input (table, permutation,
size bound), 4 search budget exhausted (verdict Unknown). Errors go to
stderr as ``error:<kind>:<message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import __version__
from .catalog import FAMILIES, fixture_names, load_fixture, make_family
from .classify import QuotientMemo, classify
from .errors import (
    CapacityError,
    FilledGroupsError,
    PermutationParseError,
    TableValidationError,
)
from .group import (
    FiniteGroup,
    dump_cayley_table,
    load_cayley_table,
    make_from_permutations,
    parse_permutation_cycles,
)
from .pfs import format_set, parse_set_literal
from .search import (
    DEFAULT_MAX_NODES,
    UNKNOWN,
    SearchBudget,
    SearchOutcome,
    decide_filled,
    find_nonfilling_lmpf_of_size,
    oracle_decide_filled,
)
from .witnesses import certify_d44, certify_odd_dihedral, verify_witness

SCHEMA = "v1"
EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_UNKNOWN = 0, 2, 3, 4


class UsageError(FilledGroupsError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def group_json(g: FiniteGroup) -> dict:
    return {"family": str(g.family_tag), "order": g.order}


def outcome_json(g: FiniteGroup, outcome: SearchOutcome, deterministic: bool) -> dict:
    witness = None
    if outcome.witness is not None:
        witness = {
            "indices": outcome.witness.to_list(),
            "names": format_set(g, outcome.witness, symbolic=True),
        }
    return {
        "schema": SCHEMA,
        "group": group_json(g),
        "verdict": outcome.verdict,
        "witness": witness,
        "nodes_visited": outcome.nodes_visited,
        # wall-clock time would break byte-identical deterministic output
        "elapsed_ms": None if deterministic else round(outcome.elapsed * 1000, 3),
        "budget": outcome.budget.to_json(),
        "reason": outcome.reason or None,
    }


def _describe(g: FiniteGroup) -> str:
    return f"{g.family_tag} (order {g.order})"


# -- group sources -----------------------------------------------------------


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="Cayley table file ('-' for stdin)")
    src.add_argument(
        "--family",
        choices=sorted(FAMILIES),
        help="built-in family; --n is the rotation count for dihedral (order 2n), "
        "n for dicyclic (order 4n), the order for cyclic, the rank for "
        "elementary-abelian-2, the prime for cp-c4",
    )
    src.add_argument("--perms", metavar="CYCLES", help="generators in cycle notation, separated by ';'")
    src.add_argument("--fixture", choices=fixture_names(), help="shipped permutation fixture")
    p.add_argument("--n", type=int, help="family parameter (with --family)")
    p.add_argument("--degree", type=int, help="permutation degree (with --perms)")


def _group_from_args(args: argparse.Namespace) -> FiniteGroup:
    if args.family is not None:
        if args.n is None:
            raise UsageError("--family needs --n")
        return make_family(args.family, args.n)
    if args.n is not None:
        raise UsageError("--n only applies with --family")
    if args.perms is not None:
        if args.degree is None:
            raise UsageError("--perms needs --degree")
        gens = [parse_permutation_cycles(t, args.degree) for t in args.perms.split(";") if t.strip()]
        return make_from_permutations(gens, args.degree)
    if args.degree is not None:
        raise UsageError("--degree only applies with --perms")
    if args.fixture is not None:
        return load_fixture(args.fixture)
    if args.input == "-":
        return load_cayley_table(sys.stdin.read())
    return _load_file(Path(args.input))


def _load_file(path: Path) -> FiniteGroup:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return load_cayley_table(data)


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(
        max_nodes=args.budget_nodes,
        max_set_size=getattr(args, "max_set_size", None),
        deterministic=args.deterministic or args.threads <= 1,
    )


def _emit(args: argparse.Namespace, payload: dict, text: str, out: TextIO) -> None:
    line = json.dumps(payload) if args.json else text
    if args.out:
        Path(args.out).write_text(line + "\n")
    else:
        print(line, file=out)


# -- subcommands -------------------------------------------------------------


def cmd_gen(args, out) -> int:
    g = _group_from_args(args)
    text = dump_cayley_table(g)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {_describe(g)} to {args.out}", file=sys.stderr)
    else:
        out.write(text)
    return EXIT_OK


def cmd_check_set(args, out) -> int:
    g = _group_from_args(args)
    cert = verify_witness(g, parse_set_literal(g, args.set))
    _emit(args, cert.to_json(), cert.summary(), out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    g = _group_from_args(args)
    outcome = decide_filled(g, _budget(args), threads=args.threads)
    text = f"{_describe(g)}: {outcome.verdict} after {outcome.nodes_visited} nodes"
    if outcome.witness is not None:
        text += ": counterexample {" + ", ".join(format_set(g, outcome.witness, symbolic=True)) + "}"
    if outcome.verdict == UNKNOWN:
        text += f" ({outcome.reason})"
    _emit(args, outcome_json(g, outcome, args.deterministic), text, out)
    return EXIT_UNKNOWN if outcome.verdict == UNKNOWN else EXIT_OK


def cmd_oracle_search(args, out) -> int:
    g = _group_from_args(args)
    if args.k is not None:
        hit = find_nonfilling_lmpf_of_size(g, args.k)
        payload = {
            "schema": SCHEMA,
            "group": group_json(g),
            "k": args.k,
            "witness": None if hit is None else {
                "indices": hit.to_list(), "names": format_set(g, hit, symbolic=True)
            },
        }
        text = f"{_describe(g)}, k={args.k}: " + (
            "none" if hit is None else "{" + ", ".join(format_set(g, hit, symbolic=True)) + "}"
        )
        _emit(args, payload, text, out)
        return EXIT_OK
    outcome = oracle_decide_filled(g)
    text = f"{_describe(g)}: {outcome.verdict} (size-by-size enumeration)"
    _emit(args, outcome_json(g, outcome, args.deterministic), text, out)
    return EXIT_OK


def _verdict_payload(g: FiniteGroup, verdict) -> dict:
    payload = {"schema": SCHEMA, "group": group_json(g)}
    payload.update(verdict.to_json())
    return payload


def cmd_classify(args, out) -> int:
    g = _group_from_args(args)
    verdict = classify(
        g, _budget(args), use_filters=not args.no_filters, use_memo=not args.no_memo, threads=args.threads
    )
    _emit(args, _verdict_payload(g, verdict), f"{_describe(g)}: {verdict.summary()}", out)
    return EXIT_UNKNOWN if verdict.status == UNKNOWN else EXIT_OK


def cmd_classify_dir(args, out) -> int:
    files = sorted(p for p in Path(args.directory).iterdir() if p.suffix in (".tbl", ".txt"))
    memo = QuotientMemo()
    rows = []
    status = EXIT_OK
    for path in files:
        try:
            g = _load_file(path)
        except TableValidationError as exc:
            print(json.dumps({"schema": SCHEMA, "file": path.name, "error": str(exc)}), file=out)
            rows.append((path.name, "-", "invalid", "-", "-"))
            status = EXIT_INVALID
            continue
        verdict = classify(g, _budget(args), memo=memo, threads=args.threads)
        payload = {"schema": SCHEMA, "file": path.name, "group": group_json(g)}
        payload.update(verdict.to_json())
        print(json.dumps(payload), file=out)
        wsize = len(verdict.witness.set) if verdict.witness else "-"
        rows.append((path.name, g.order, verdict.status, verdict.deciding_rule or "-", wsize))
        if verdict.status == UNKNOWN and status == EXIT_OK:
            status = EXIT_UNKNOWN
    header = ("file", "order", "verdict", "rule", "witness")
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(5)]
    summary = sys.stderr if args.summary is None else open(args.summary, "w")
    try:
        for r in [header] + rows:
            print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip(), file=summary)
    finally:
        if summary is not sys.stderr:
            summary.close()
    return status


def cmd_witness(args, out) -> int:
    if args.d44:
        cert = certify_d44()
    else:
        if args.n is None:
            raise UsageError("--odd needs --n")
        cert = certify_odd_dihedral(args.n)
    _emit(args, cert.to_json(), cert.summary(), out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="filledgroups",
        description="Locally maximal product-free sets and filled groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="emit JSON (schema v1)")
    shared.add_argument("--deterministic", action="store_true",
                        help="sequential search, DFS-first witness, no timings in output")
    shared.add_argument("--budget-nodes", type=int, default=DEFAULT_MAX_NODES, metavar="N",
                        help="search node budget, 0 for unlimited (default: %(default)s)")
    shared.add_argument("--threads", type=int, default=1, help="worker processes for search (default: 1)")
    shared.add_argument("--out", metavar="FILE", help="write the result to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[shared], help="write a group's Cayley table")
    _add_source(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-set", parents=[shared], help="certify one set")
    _add_source(p)
    p.add_argument("--set", required=True, help='indices "2,5,8" or names "x^2,x^5*y"')
    p.set_defaults(func=cmd_check_set)

    p = sub.add_parser("search", parents=[shared], help="decide filledness by pruned search")
    _add_source(p)
    p.add_argument("--max-set-size", type=int, help="do not grow sets beyond this size")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle-search", parents=[shared], help="size-by-size reference enumeration")
    _add_source(p)
    p.add_argument("--k", type=int, help="only try sets of this size")
    p.set_defaults(func=cmd_oracle_search)

    p = sub.add_parser("classify", parents=[shared], help="structural rules, then search")
    _add_source(p)
    p.add_argument("--no-filters", action="store_true", help="skip the structural rules")
    p.add_argument("--no-memo", action="store_true", help="do not cache quotient verdicts")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("classify-dir", parents=[shared], help="classify every *.tbl file in a directory")
    p.add_argument("directory")
    p.add_argument("--summary", metavar="FILE", help="write the summary table here (default: stderr)")
    p.set_defaults(func=cmd_classify_dir)

    p = sub.add_parser("witness", parents=[shared], help="certify a known non-filling set")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--d44", action="store_true", help="the 7-element set in the dihedral group of order 44")
    which.add_argument("--odd", action="store_true", help="the run-shaped set in D_2n for odd n >= 13")
    p.add_argument("--n", type=int, help="rotation count n (with --odd)")
    p.set_defaults(func=cmd_witness)
    return parser


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (TableValidationError, PermutationParseError, CapacityError) as exc:
        print(f"error:{exc.kind}:{exc}", file=sys.stderr)
        return EXIT_INVALID
    except FilledGroupsError as exc:
        print(f"error:{exc.kind}:{exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
