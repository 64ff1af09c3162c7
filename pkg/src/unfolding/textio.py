"""Text graph format, DOT export, and the vertex-sum element syntax.

Graph files hold one directive per line; ``#`` starts a comment::

    vertex a
    edge a b 2      # two parallel edges a -> b
    root a
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping, Sequence

from .graph import NAME_RE, GraphError, MultiGraph, RootedGraph, UnfoldTree


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)


def parse_graph(text: str, source: str | None = None) -> tuple[MultiGraph, int | None]:
    """Parse graph text; returns the graph and the root index (or None)."""
    names: list[str] = []
    index: dict[str, int] = {}
    counts: dict[tuple[int, int], int] = {}
    root_name = None

    def declare(name: str, lineno: int) -> int:
        if not NAME_RE.match(name):
            raise ParseError(f"invalid vertex name {name!r}", lineno, source)
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        if word == "vertex":
            if len(args) != 1:
                raise ParseError("expected: vertex <name>", lineno, source)
            declare(args[0], lineno)
        elif word == "edge":
            if len(args) not in (2, 3):
                raise ParseError("expected: edge <from> <to> [multiplicity]", lineno, source)
            mult = 1
            if len(args) == 3:
                if not args[2].isdigit():
                    raise ParseError(f"invalid multiplicity {args[2]!r}", lineno, source)
                mult = int(args[2])
            u, v = declare(args[0], lineno), declare(args[1], lineno)
            counts[u, v] = counts.get((u, v), 0) + mult
        elif word == "root":
            if len(args) != 1:
                raise ParseError("expected: root <name>", lineno, source)
            if root_name is not None:
                raise ParseError("more than one root directive", lineno, source)
            declare(args[0], lineno)
            root_name = args[0]
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, source)

    adj = [[0] * len(names) for _ in names]
    for (u, v), c in counts.items():
        adj[u][v] = c
    try:
        g = MultiGraph.from_matrix(adj, names)
    except GraphError as exc:
        raise ParseError(str(exc), None, source) from None
    return g, (index[root_name] if root_name is not None else None)


def format_graph(g: MultiGraph, root: int | None = None) -> str:
    lines = [f"vertex {name}" for name in g.names]
    for u in range(g.n):
        for v in range(g.n):
            c = g.adj[u][v]
            if c == 1:
                lines.append(f"edge {g.names[u]} {g.names[v]}")
            elif c:
                lines.append(f"edge {g.names[u]} {g.names[v]} {c}")
    if root is not None:
        lines.append(f"root {g.names[root]}")
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> tuple[MultiGraph, int | None]:
    path = Path(path)
    return parse_graph(path.read_text(), source=str(path))


def read_rooted(path: str | Path) -> RootedGraph:
    """Read a graph file that must carry a ``root`` directive."""
    g, root = read_graph(path)
    if root is None:
        raise ParseError("graph has no root directive", None, str(path))
    return RootedGraph(g, root)


def graph_to_dot(g: MultiGraph, root: int | None = None, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for i, vname in enumerate(g.names):
        attrs = ' [peripheries=2]' if i == root else ""
        lines.append(f'  "{vname}"{attrs};')
    for u, v, _ in g.edges():
        lines.append(f'  "{g.names[u]}" -> "{g.names[v]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(t: UnfoldTree, names: Sequence[str]) -> str:
    lines = ["digraph T {"]
    for node, label in enumerate(t.labels):
        attrs = f'label="{names[label]}"'
        if node == 0:
            attrs += ", peripheries=2"
        lines.append(f"  n{node} [{attrs}];")
    for node, parent in enumerate(t.parents):
        if parent >= 0:
            lines.append(f"  n{parent} -> n{node};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_text(t: UnfoldTree, names: Sequence[str]) -> str:
    """Indented outline of the tree, one node per line."""
    out = []
    stack = [(0, 0)]
    while stack:
        node, level = stack.pop()
        out.append("  " * level + names[t.labels[node]])
        for child in reversed(t.children[node]):
            stack.append((child, level + 1))
    return "\n".join(out) + "\n"


def format_partition(class_of: Sequence[int], names: Sequence[str]) -> str:
    classes: dict[int, list[str]] = {}
    for v, c in enumerate(class_of):
        classes.setdefault(c, []).append(names[v])
    return "".join(f"class {c}: {' '.join(classes[c])}\n" for c in sorted(classes))


_TERM_RE = re.compile(r"(\d+)\s*\*?\s*([A-Za-z0-9_]+)\Z")


def parse_element(text: str, names: Sequence[str]) -> tuple[int, ...]:
    """Parse a sum like ``"3x + y"`` into a coefficient vector over ``names``.

    ``"0"`` denotes the zero element.
    """
    coeffs = [0] * len(names)
    index = {name: i for i, name in enumerate(names)}
    if text.strip() == "0":
        return tuple(coeffs)
    for term in text.split("+"):
        term = term.strip()
        if term in index:
            coeffs[index[term]] += 1
            continue
        m = _TERM_RE.match(term)
        if m is None or m.group(2) not in index:
            raise ParseError(f"cannot parse term {term!r} in element {text!r}")
        coeffs[index[m.group(2)]] += int(m.group(1))
    return tuple(coeffs)


def format_element(coeffs: Sequence[int] | Mapping[int, int], names: Sequence[str]) -> str:
    if isinstance(coeffs, Mapping):
        items = sorted(coeffs.items())
    else:
        items = list(enumerate(coeffs))
    terms = [names[i] if c == 1 else f"{c}{names[i]}" for i, c in items if c]
    return " + ".join(terms) if terms else "0"
