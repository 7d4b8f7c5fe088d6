"""Command-line entry point: ``reldp {prove,oracle,dps,graph,check}``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ReldpError
from .oracle import Bounds, Status, bounded_finiteness
from .parsing import InputDocument, TrsDocument, load, print_rdp
from .problem import RelativeDpp, initial
from .processors import estimated_graph
from .proof import STRATEGIES, Outcome, Strategy, dump_proof, load_proof, prove, replay
from .serialize import dumps, witness_to_json

EXIT_FINITE = 0
EXIT_NOT_FINITE = 1
EXIT_OPEN = 2
EXIT_ERROR = 3

_OUTCOME_EXIT = {
    Outcome.FINITE: EXIT_FINITE,
    Outcome.NOT_FINITE: EXIT_NOT_FINITE,
    Outcome.OPEN: EXIT_OPEN,
}
_STATUS_EXIT = {
    Status.FINITE: EXIT_FINITE,
    Status.NOT_FINITE: EXIT_NOT_FINITE,
    Status.UNKNOWN: EXIT_OPEN,
}


class UsageError(ReldpError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "Open"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _problem(doc: InputDocument) -> RelativeDpp:
    if doc.kind == "rdp":
        return doc.payload
    trs: TrsDocument = doc.payload
    if trs.is_relative:
        raise UsageError(
            "weak rules (->=) are not supported for .trs input; "
            "write the relative DP problem as an .rdp file instead"
        )
    return initial(trs.strict)


def _strategy(choice: str | None, timeout: float | None) -> Strategy:
    if choice is None:
        strategy = STRATEGIES["default"]
    elif choice in STRATEGIES:
        strategy = STRATEGIES[choice]
    else:
        path = Path(choice)
        if not path.exists():
            raise UsageError(f"unknown strategy {choice!r} (built-in: {', '.join(STRATEGIES)})")
        try:
            strategy = Strategy.from_json(json.loads(path.read_text(encoding="utf-8")))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise UsageError(f"bad strategy file {choice}: {e}") from None
    if timeout is not None:
        strategy = replace(strategy, timeout=timeout)
    return strategy


def cmd_prove(args) -> int:
    d = _problem(load(args.file))
    root = prove(d, _strategy(args.strategy, args.timeout))
    if args.format == "json":
        sys.stdout.write(dump_proof(root))
    else:
        print(root.render())
        print(root.outcome.value)
    return _OUTCOME_EXIT[root.outcome]


def cmd_oracle(args) -> int:
    d = _problem(load(args.file))
    result = bounded_finiteness(d, Bounds(args.max_steps, args.term_depth, args.rewrite_budget))
    print(result.status.value)
    if result.witness is not None:
        sys.stdout.write(dumps(witness_to_json(result.witness)))
    return _STATUS_EXIT[result.status]


def cmd_dps(args) -> int:
    doc = load(args.file)
    if doc.kind != "trs":
        raise UsageError("dps expects a .trs file")
    sys.stdout.write(print_rdp(_problem(doc)))
    return 0


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def graph_dot(d: RelativeDpp) -> str:
    edges = estimated_graph(d)
    lines = ["digraph dependency_graph {"]
    for i, p in enumerate(d.pairs):
        style = "solid" if d.pair_is_strict(i) else "dashed"
        lines.append(f'  n{i} [label="{_dot_escape(str(p))}", style={style}];')
    for i, js in edges.items():
        lines += [f"  n{i} -> n{j};" for j in js]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_graph(args) -> int:
    d = _problem(load(args.file))
    if args.dot:
        sys.stdout.write(graph_dot(d))
        return 0
    edges = estimated_graph(d)
    for i, p in enumerate(d.pairs):
        kind = "strict" if d.pair_is_strict(i) else "weak"
        print(f"{i}: {p} [{kind}] -> {edges[i]}")
    return 0


def cmd_check(args) -> int:
    root = load_proof(Path(args.proof).read_text(encoding="utf-8"))
    verdict = replay(root)
    if verdict:
        print(f"OK: {root.outcome.value}")
        return 0
    print(f"rejected: {verdict.diagnostic}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="reldp", description="Relative dependency pair problems: prover and tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prove", help="search for a finiteness proof")
    p.add_argument("file")
    p.add_argument("--strategy", help=f"built-in name ({', '.join(STRATEGIES)}) or a JSON file")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--timeout", type=float, metavar="SECONDS")
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("oracle", help="bounded search for a chain loop")
    p.add_argument("file")
    p.add_argument("--max-steps", type=int, default=4)
    p.add_argument("--term-depth", type=int, default=5)
    p.add_argument("--rewrite-budget", type=int, default=50)
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("dps", help="print the initial DP problem of a .trs file")
    p.add_argument("file")
    p.set_defaults(run=cmd_dps)

    p = sub.add_parser("graph", help="print the estimated dependency graph")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    p.set_defaults(run=cmd_graph)

    p = sub.add_parser("check", help="replay a JSON proof certificate")
    p.add_argument("proof")
    p.set_defaults(run=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except OSError as e:
        print(f"reldp: {e}", file=sys.stderr)
    except (ReldpError, ValueError) as e:
        print(f"reldp: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
