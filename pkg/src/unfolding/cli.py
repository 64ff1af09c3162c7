"""Command-line front end.

Decision commands exit 0 for a positive verdict, 1 for a negative one and 2
for usage, parse or internal errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .almost import AlmostVerdict, almost_iso
from .decompose import spider_normal_form
from .graph import GraphError, RootedGraph, count_walks, unfold
from .isodecide import unfolding_iso
from .monoid import graph_system, monoid_equal, normal_form
from .refine import reduce
from .textio import (
    format_element,
    format_graph,
    format_partition,
    graph_to_dot,
    parse_element,
    read_graph,
    read_rooted,
    tree_to_dot,
    tree_to_text,
)
from .twovertex import conjecture_scan

MAX_UNFOLD_NODES = 10**6


class UsageError(Exception):
    pass


def _indent(text: str, prefix: str = "  ") -> str:
    return "".join(prefix + line + "\n" for line in text.splitlines())


def cmd_reduce(args, out) -> int:
    g = read_rooted(args.graph)
    rg, p = reduce(g)
    if args.format == "dot":
        out.write(graph_to_dot(rg.graph, rg.root))
    else:
        out.write(format_graph(rg.graph, rg.root))
        out.write("# partition of the input\n")
        out.write(_indent(format_partition(p.class_of, g.graph.names), "# "))
    return 0


def cmd_iso(args, out) -> int:
    g, h = read_rooted(args.first), read_rooted(args.second)
    verdict = unfolding_iso(g, h)
    if verdict.isomorphic:
        out.write("verdict: isomorphic\n")
        out.write("reduced-first:\n" + _indent(format_graph(verdict.reduced_g.graph, verdict.reduced_g.root)))
        out.write("reduced-second:\n" + _indent(format_graph(verdict.reduced_h.graph, verdict.reduced_h.root)))
        gn, hn = verdict.reduced_g.graph.names, verdict.reduced_h.graph.names
        for u, v in sorted(verdict.bijection.items()):
            out.write(f"map {gn[u]} {hn[v]}\n")
        return 0
    out.write("verdict: not isomorphic\n")
    out.write(f"distinguishing-depth: {verdict.depth}\n")
    return 1


def write_almost_certificate(verdict: AlmostVerdict, out) -> None:
    out.write("verdict: " + ("almost isomorphic" if verdict.almost_isomorphic else "not almost isomorphic") + "\n")
    if verdict.reason:
        out.write(f"reason: {verdict.reason}\n")
    for check in verdict.checks:
        names = check.graph.names
        out.write(f"component {check.index_g} <-> {check.index_h}\n")
        out.write(_indent(format_graph(check.graph)))
        for u, v in sorted(check.bijection.items()):
            out.write(f"  map {names[u]} {check.graph_h.names[v]}\n")
        out.write(f"  sum-first: {format_element(check.sum_g, names)}\n")
        out.write(f"  sum-second: {format_element(check.sum_h, names)}\n")
        out.write(f"  normal-form-first: {format_element(check.normal_g, names)}\n")
        out.write(f"  normal-form-second: {format_element(check.normal_h, names)}\n")


def cmd_almost(args, out) -> int:
    g, h = read_rooted(args.first), read_rooted(args.second)
    verdict = almost_iso(g, h)
    write_almost_certificate(verdict, out)
    return 0 if verdict.almost_isomorphic else 1


def cmd_unfold(args, out) -> int:
    g = read_rooted(args.graph)
    if args.depth < 0:
        raise UsageError("--depth must be non-negative")
    size = count_walks(g.graph, g.root, args.depth)
    if size > MAX_UNFOLD_NODES:
        raise UsageError(f"unfolding to depth {args.depth} has {size} nodes (limit {MAX_UNFOLD_NODES})")
    t = unfold(g, args.depth)
    names = g.graph.names
    out.write(tree_to_dot(t, names) if args.format == "dot" else tree_to_text(t, names))
    return 0


def cmd_decompose(args, out) -> int:
    g = read_rooted(args.graph)
    d = spider_normal_form(g)
    if args.format == "dot":
        out.write(graph_to_dot(d.to_rooted().graph, 0))
        return 0
    for i, comp in enumerate(d.components):
        out.write(f"# component {i}\n")
        out.write(format_graph(comp.graph))
        for v, m in comp.rho_items().items():
            out.write(f"rho {comp.graph.names[v]} {m}\n")
    return 0


def cmd_monoid(args, out) -> int:
    g, _ = read_graph(args.graph)
    if args.action == "eq":
        if len(args.elements) != 2:
            raise UsageError("monoid eq needs exactly two elements")
        a, b = (parse_element(e, g.names) for e in args.elements)
        equal = monoid_equal(g, a, b)
        sys_ = graph_system(g)
        out.write(f"{'equal' if equal else 'not equal'}\n")
        out.write(f"normal-form-first: {format_element(normal_form(sys_, a), g.names)}\n")
        out.write(f"normal-form-second: {format_element(normal_form(sys_, b), g.names)}\n")
        return 0 if equal else 1
    if args.elements:
        raise UsageError("monoid basis takes no elements")
    lines = sorted(
        f"{format_element(r.lhs, g.names)} -> {format_element(r.rhs, g.names)}" for r in graph_system(g).rules
    )
    out.write("".join(line + "\n" for line in lines))
    return 0


def cmd_scan(args, out) -> int:
    if args.max < 1 or args.jobs < 1:
        raise UsageError("--max and --jobs must be positive")
    errors: list = []
    found = conjecture_scan(args.max, jobs=args.jobs, errors=errors)
    for cell in found:
        out.write(" ".join(map(str, cell)) + "\n")
    if errors:
        for cell, message in errors:
            print(f"error in cell {cell}: {message}", file=sys.stderr)
        return 2
    return 1 if found else 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unfolding", description="Unfolding trees of rooted multigraphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="non-redundant quotient of a rooted graph")
    p.add_argument("graph")
    p.add_argument("--format", choices=["text", "dot"], default="text")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("iso", help="are the unfolding trees isomorphic?")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("almost-iso", help="are the unfolding trees almost isomorphic?")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_almost)

    p = sub.add_parser("unfold", help="truncated unfolding tree")
    p.add_argument("graph")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=["text", "dot"], default="text")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("decompose", help="spider normal form")
    p.add_argument("graph")
    p.add_argument("--format", choices=["text", "dot"], default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("monoid", help="graph monoid word problem")
    p.add_argument("graph")
    p.add_argument("action", choices=["eq", "basis"])
    p.add_argument("elements", nargs="*")
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("conjecture-scan", help="scan two-vertex graphs for counterexamples")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (UsageError, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal errors still map to exit 2
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
