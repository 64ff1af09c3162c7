"""Finite directed multigraphs stored as edge-multiplicity matrices.

An individual edge is addressed as ``(u, v, k)``: the ``k``-th of the
``adj[u][v]`` parallel edges from ``u`` to ``v``.  Nothing else about edges
is stored; every algorithm in this package only looks at counts.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

MAX_MULTIPLICITY = 2**32
NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

Edge = tuple[int, int, int]


class GraphError(ValueError):
    """Malformed graph data or an invalid vertex reference."""


class CoverageError(GraphError):
    """A spider component is not covered by the half-graphs of its attachments."""


class UnreachableError(GraphError):
    """Some vertex cannot be reached from the designated root."""


@dataclass(frozen=True)
class MultiGraph:
    names: tuple[str, ...]
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        names = tuple(self.names)
        adj = tuple(tuple(int(c) for c in row) for row in self.adj)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "adj", adj)
        n = len(names)
        if len(adj) != n or any(len(row) != n for row in adj):
            raise GraphError(f"adjacency matrix must be {n}x{n}")
        if len(set(names)) != n:
            raise GraphError("vertex names must be distinct")
        for name in names:
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise GraphError(f"invalid vertex name {name!r}")
        for row in adj:
            for c in row:
                if c < 0:
                    raise GraphError("edge multiplicities must be natural numbers")
                if c >= MAX_MULTIPLICITY:
                    raise GraphError(f"edge multiplicity {c} exceeds 2^32 - 1")

    @classmethod
    def from_matrix(cls, adj: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> MultiGraph:
        if names is None:
            names = default_names(len(adj))
        return cls(tuple(names), tuple(tuple(row) for row in adj))

    @classmethod
    def from_edges(cls, names: Sequence[str], edges: Iterable[tuple[str, str] | tuple[str, str, int]]) -> MultiGraph:
        index = {name: i for i, name in enumerate(names)}
        adj = [[0] * len(names) for _ in names]
        for edge in edges:
            u, v, *rest = edge
            adj[index[u]][index[v]] += rest[0] if rest else 1
        return cls.from_matrix(adj, names)

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, vertex: int | str) -> int:
        """Resolve a vertex given by index or by name."""
        if isinstance(vertex, str):
            try:
                return self.names.index(vertex)
            except ValueError:
                raise GraphError(f"unknown vertex {vertex!r}") from None
        if isinstance(vertex, bool) or not isinstance(vertex, int) or not 0 <= vertex < self.n:
            raise GraphError(f"invalid vertex index {vertex!r}")
        return vertex

    def successors(self, u: int) -> list[int]:
        return [v for v, c in enumerate(self.adj[u]) if c]

    def edges(self) -> list[Edge]:
        """All edges in deterministic order (source, target, copy index)."""
        return [(u, v, k) for u in range(self.n) for v in range(self.n) for k in range(self.adj[u][v])]

    def in_degree(self, v: int) -> int:
        v = self.index(v)
        return sum(row[v] for row in self.adj)

    def induced(self, vertices: Iterable[int]) -> tuple[MultiGraph, list[int]]:
        """Vertex-induced subgraph; returns it with the sorted list of kept old indices."""
        keep = sorted(set(vertices))
        sub = MultiGraph(
            tuple(self.names[i] for i in keep),
            tuple(tuple(self.adj[i][j] for j in keep) for i in keep),
        )
        return sub, keep

    def relabel(self, perm: Sequence[int]) -> MultiGraph:
        """Graph with old vertex ``i`` moved to position ``perm[i]``."""
        n = self.n
        names = [""] * n
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            names[perm[i]] = self.names[i]
            for j in range(n):
                adj[perm[i]][perm[j]] = self.adj[i][j]
        return MultiGraph.from_matrix(adj, names)


def default_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"v{i}" for i in range(n)]


def disjoint_union(g: MultiGraph, h: MultiGraph) -> MultiGraph:
    """``g`` on indices ``0..|g|-1`` followed by ``h``; names are made unique."""
    n, m = g.n, h.n
    adj = [list(row) + [0] * m for row in g.adj] + [[0] * n + list(row) for row in h.adj]
    return MultiGraph.from_matrix(adj, [f"g_{s}" for s in g.names] + [f"h_{s}" for s in h.names])


@dataclass(frozen=True)
class RootedGraph:
    graph: MultiGraph
    root: int

    def __post_init__(self):
        root = self.graph.index(self.root)
        object.__setattr__(self, "root", root)
        unreached = set(range(self.graph.n)) - reachable_from(self.graph, root)
        if unreached:
            names = ", ".join(self.graph.names[i] for i in sorted(unreached))
            raise UnreachableError(f"vertices not reachable from root {self.graph.names[root]}: {names}")

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class Walk:
    origin: int
    steps: tuple[Edge, ...] = ()

    def __post_init__(self):
        at = self.origin
        for u, v, _ in self.steps:
            if u != at:
                raise GraphError("walk steps do not chain")
            at = v

    @property
    def terminus(self) -> int:
        return self.steps[-1][1] if self.steps else self.origin

    def __len__(self) -> int:
        return len(self.steps)

    def extend(self, edge: Edge) -> Walk:
        return Walk(self.origin, self.steps + (edge,))

    def is_prefix_of(self, other: Walk) -> bool:
        return self.origin == other.origin and other.steps[: len(self.steps)] == self.steps


def out_degree(g: MultiGraph, v: int | str) -> int:
    return sum(g.adj[g.index(v)])


def reachable_from(g: MultiGraph, v: int | str) -> set[int]:
    """Vertices that some walk starting at ``v`` ends at (``v`` included)."""
    start = g.index(v)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.successors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def half_graph(g: MultiGraph, x: int | str) -> RootedGraph:
    """The subgraph induced on everything reachable from ``x``, rooted at ``x``."""
    x = g.index(x)
    sub, keep = g.induced(reachable_from(g, x))
    return RootedGraph(sub, keep.index(x))


def roots(g: MultiGraph) -> set[int]:
    return {v for v in range(g.n) if len(reachable_from(g, v)) == g.n}


def is_robustly_rooted(g: MultiGraph) -> bool:
    return any(g.in_degree(v) > 0 for v in roots(g))


def is_robust(g: MultiGraph) -> bool:
    reach = [frozenset(reachable_from(g, v)) for v in range(g.n)]
    for v in range(g.n):
        if any(reach[v] < other for other in reach):
            continue
        sub, keep = g.induced(reach[v])
        if sub.n == 1 and sub.adj[0][0] == 0:
            continue
        if not is_robustly_rooted(sub):
            return False
    return True


@dataclass(frozen=True)
class UnfoldTree:
    """Walks of length at most ``depth`` from the root, as an explicit tree.

    Node 0 is the empty walk.  ``labels[i]`` is the terminus vertex of node
    ``i``, ``edges[i]`` the last edge of its walk (``None`` for the root) and
    ``parents[i]`` its parent node (``-1`` for the root).
    """

    depth: int
    labels: tuple[int, ...]
    parents: tuple[int, ...]
    edges: tuple[Edge | None, ...]
    children: tuple[tuple[int, ...], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.labels)

    def walk(self, node: int) -> Walk:
        steps = []
        while self.parents[node] >= 0:
            steps.append(self.edges[node])
            node = self.parents[node]
        return Walk(self.labels[0], tuple(reversed(steps)))


def count_walks(g: MultiGraph, root: int, depth: int) -> int:
    """Number of walks from ``root`` of length at most ``depth``."""
    vec = [0] * g.n
    vec[root] = 1
    total = 1
    for _ in range(depth):
        nxt = [0] * g.n
        for u, c in enumerate(vec):
            if c:
                for v, m in enumerate(g.adj[u]):
                    if m:
                        nxt[v] += c * m
        vec = nxt
        step = sum(vec)
        if not step:
            break
        total += step
    return total


def unfold(g: RootedGraph, depth: int) -> UnfoldTree:
    if depth < 0:
        raise GraphError("depth must be non-negative")
    adj = g.graph.adj
    labels = [g.root]
    parents = [-1]
    edges: list[Edge | None] = [None]
    children: list[list[int]] = [[]]
    level = [0]
    for _ in range(depth):
        nxt = []
        for node in level:
            u = labels[node]
            for v, m in enumerate(adj[u]):
                for k in range(m):
                    child = len(labels)
                    labels.append(v)
                    parents.append(node)
                    edges.append((u, v, k))
                    children.append([])
                    children[node].append(child)
                    nxt.append(child)
        if not nxt:
            break
        level = nxt
    return UnfoldTree(depth, tuple(labels), tuple(parents), tuple(edges), tuple(map(tuple, children)))


def tree_hash(t: UnfoldTree) -> str:
    """Isomorphism-invariant digest of the unlabeled rooted tree ``t``."""
    digests: list[bytes] = [b""] * len(t)
    # children always have larger node ids than their parents
    for node in range(len(t) - 1, -1, -1):
        h = hashlib.sha256(b"(")
        for d in sorted(digests[c] for c in t.children[node]):
            h.update(d)
        h.update(b")")
        digests[node] = h.digest()
    return digests[0].hex()


def spider_product(components: Sequence[tuple[MultiGraph, Mapping[int | str, int]]]) -> RootedGraph:
    """Attach the components to a fresh root ``S``.

    Each component comes with a multiset of its vertices (mapping vertex to
    multiplicity); the root gets that many edges into each listed vertex.
    The result has the root at index 0 and the components embedded in order
    after it, vertex names prefixed ``c<i>_``.
    """
    names = ["S"]
    offsets = []
    total = 1
    for i, (comp, _) in enumerate(components):
        offsets.append(total)
        total += comp.n
        names.extend(f"c{i}_{name}" for name in comp.names)
    adj = [[0] * total for _ in range(total)]
    for (comp, rho), off in zip(components, offsets):
        support = {}
        for vertex, mult in rho.items():
            if mult < 0:
                raise GraphError("attachment multiplicities must be natural numbers")
            if mult:
                v = comp.index(vertex)
                support[v] = support.get(v, 0) + mult
        if not support:
            raise GraphError("each spider component needs a nonempty attachment multiset")
        covered = set().union(*(reachable_from(comp, v) for v in support))
        if len(covered) != comp.n:
            raise CoverageError("half-graphs at the attachment vertices do not cover the component")
        for v, mult in support.items():
            adj[0][off + v] += mult
        for u in range(comp.n):
            for v in range(comp.n):
                adj[off + u][off + v] = comp.adj[u][v]
    return RootedGraph(MultiGraph.from_matrix(adj, names), 0)


def labels_to_graph(labels: Sequence[str], root_label: str, counts: Sequence[Sequence[int]]) -> RootedGraph:
    """Graph whose unfolding from ``root_label`` has the prescribed label counts.

    ``counts[m][n]`` is the number of ``n``-labeled children of an
    ``m``-labeled tree vertex.
    """
    g = MultiGraph.from_matrix(counts, labels)
    return RootedGraph(g, g.index(root_label))


def walk_multiset(g: MultiGraph, root: int, length: int) -> Counter:
    """Terminus multiset of the walks of exactly ``length`` steps from ``root``."""
    vec = Counter({root: 1})
    for _ in range(length):
        nxt: Counter = Counter()
        for u, c in vec.items():
            for v, m in enumerate(g.adj[u]):
                if m:
                    nxt[v] += c * m
        vec = nxt
    return vec


def unit_vector(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))
