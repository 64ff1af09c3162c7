"""Spider normal form and walk bases.

Every rooted graph has, up to almost isomorphism of its unfolding tree, a
normal form: a fresh root attached to connected, robust, non-redundant
components.  The attachment multiset of a component is what distinguishes
almost-isomorphism classes that share components.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import (
    GraphError,
    MultiGraph,
    RootedGraph,
    Walk,
    disjoint_union,
    is_robust,
    reachable_from,
    roots,
    spider_product,
)
from .refine import coarsest_stable_partition, graph_iso_nonredundant, is_non_redundant, quotient


class CyclicRemainderError(GraphError):
    """The graph minus the stop set still has a cycle."""


class DecompositionError(RuntimeError):
    """A spider normal form failed its own invariant checks."""


class BasisError(GraphError):
    pass


def cycle_vertices(g: MultiGraph) -> set[int]:
    """Vertices lying on a non-empty closed walk."""
    out = set()
    for v in range(g.n):
        if g.adj[v][v] or any(v in reachable_from(g, w) for w in g.successors(v)):
            out.add(v)
    return out


def sinks(g: MultiGraph) -> set[int]:
    return {v for v in range(g.n) if not any(g.adj[v])}


def weak_components(g: MultiGraph) -> list[list[int]]:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(g.n):
        for v in g.successors(u):
            parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def first_hit_counts(g: RootedGraph, stop: Iterable[int]) -> dict[int, int]:
    """Count walks from the root that end at their first vertex in ``stop``.

    Only vertices with a positive count appear in the result.
    """
    graph = g.graph
    stop = {graph.index(m) for m in stop}
    if g.root in stop:
        return {g.root: 1}
    rest = [v for v in range(graph.n) if v not in stop]
    indeg = {v: 0 for v in rest}
    for u in rest:
        for v in graph.successors(u):
            if v not in stop:
                indeg[v] += 1
    order = []
    queue = deque(v for v in rest if indeg[v] == 0)
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in graph.successors(u):
            if v not in stop:
                indeg[v] -= 1
                if indeg[v] == 0:
                    queue.append(v)
    if len(order) != len(rest):
        raise CyclicRemainderError("vertices outside the stop set contain a cycle")
    ways = [0] * graph.n
    ways[g.root] = 1
    hits: dict[int, int] = {}
    for u in order:
        if not ways[u]:
            continue
        for v, mult in enumerate(graph.adj[u]):
            if mult:
                if v in stop:
                    hits[v] = hits.get(v, 0) + ways[u] * mult
                else:
                    ways[v] += ways[u] * mult
    return dict(sorted(hits.items()))


@dataclass(frozen=True)
class Component:
    """A spider component with its attachment multiplicity per vertex."""

    graph: MultiGraph
    rho: tuple[int, ...]

    def rho_items(self) -> dict[int, int]:
        return {v: c for v, c in enumerate(self.rho) if c}


@dataclass(frozen=True)
class SpiderDecomposition:
    components: tuple[Component, ...]

    def to_rooted(self) -> RootedGraph:
        """The spider product itself (root at index 0)."""
        return spider_product([(c.graph, c.rho_items()) for c in self.components])

    def check(self) -> list[str]:
        problems = []
        comps = self.components
        for i, c in enumerate(comps):
            if len(weak_components(c.graph)) != 1:
                problems.append(f"component {i} is not connected")
            if not is_robust(c.graph):
                problems.append(f"component {i} is not robust")
            support = [v for v, m in enumerate(c.rho) if m]
            if not support:
                problems.append(f"component {i} has an empty attachment")
            elif len(set().union(*(reachable_from(c.graph, v) for v in support))) != c.graph.n:
                problems.append(f"component {i} is not covered by its attachments")
            if not is_non_redundant(c.graph):
                problems.append(f"component {i} is redundant")
        if comps and not problems:
            union = comps[0].graph
            for c in comps[1:]:
                union = disjoint_union(union, c.graph)
            if not is_non_redundant(union):
                problems.append("union of the components is redundant")
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if (
                    not problems
                    and comps[i].graph.n == comps[j].graph.n
                    and graph_iso_nonredundant(comps[i].graph, comps[j].graph) is not None
                ):
                    problems.append(f"components {i} and {j} are isomorphic")
        return problems


def _component_key(c: Component):
    return (c.graph.n, c.graph.adj, c.rho)


def spider_normal_form(g: RootedGraph) -> SpiderDecomposition:
    graph = g.graph
    stop = cycle_vertices(graph) | sinks(graph)
    counts = first_hit_counts(g, stop)
    covered = set().union(*(reachable_from(graph, m) for m in counts))
    union, keep = graph.induced(covered)
    p = coarsest_stable_partition(union)
    q, class_of = quotient(union, p)
    pushed = [0] * q.n
    for m, c in counts.items():
        pushed[class_of[keep.index(m)]] += c
    comps = []
    for members in weak_components(q):
        sub, _ = q.induced(members)
        comps.append(Component(sub, tuple(pushed[v] for v in members)))
    result = SpiderDecomposition(tuple(sorted(comps, key=_component_key)))
    problems = result.check()
    if problems:
        raise DecompositionError("; ".join(problems))
    return result


@dataclass(frozen=True)
class Basis:
    """A finite prefix-free set of walks from ``root`` in ``graph``."""

    graph: MultiGraph
    root: int
    walks: tuple[Walk, ...] = field(default=())

    def __post_init__(self):
        walks = tuple(sorted(set(self.walks), key=lambda w: (len(w), w.steps)))
        object.__setattr__(self, "walks", walks)
        for w in walks:
            if w.origin != self.root:
                raise BasisError("basis walks must start at the root")
            for u, v, k in w.steps:
                if not 0 <= k < self.graph.adj[u][v]:
                    raise BasisError(f"walk uses a missing edge {(u, v, k)}")
        for a in walks:
            for b in walks:
                if a is not b and a.is_prefix_of(b):
                    raise BasisError("basis walks must be pairwise prefix-incomparable")

    @classmethod
    def trivial(cls, graph: MultiGraph, root: int) -> Basis:
        return cls(graph, root, (Walk(root),))

    def is_inescapable(self) -> bool:
        """Every walk from the root is comparable with some basis walk."""
        members = set(self.walks)
        prefixes = {Walk(w.origin, w.steps[:i]) for w in self.walks for i in range(len(w))}
        if not members and not prefixes:
            return False
        for p in prefixes:
            for edge in self.graph.edges():
                if edge[0] == p.terminus:
                    q = p.extend(edge)
                    if q not in members and q not in prefixes:
                        return False
        return True


def expand_basis(b: Basis, p: Walk) -> Basis:
    """Replace ``p`` by all its one-edge extensions."""
    if p not in b.walks:
        raise BasisError("walk is not in the basis")
    t = p.terminus
    out = [e for e in b.graph.edges() if e[0] == t]
    if not out:
        raise BasisError("cannot expand a walk ending in a sink")
    walks = [w for w in b.walks if w != p] + [p.extend(e) for e in out]
    return Basis(b.graph, b.root, tuple(walks))


def basis_terminus_sum(g: MultiGraph, b: Basis) -> tuple[int, ...]:
    total = [0] * g.n
    for w in b.walks:
        total[w.terminus] += 1
    return tuple(total)


def almost_iso_basis_oracle(g: MultiGraph, s: int, r: int, budget: int) -> bool | None:
    """Search for bases from ``s`` and ``r`` with equal terminus multisets.

    Expanding a basis walk ending at ``v`` swaps one ``v`` in the terminus
    multiset for the targets of ``v``'s out-edges, so the search runs on
    multisets.  Returns True when the two sides meet; None when ``budget``
    expansions are spent or no further expansion is possible.
    """
    s, r = g.index(s), g.index(r)
    graph_roots = roots(g)
    if s not in graph_roots or r not in graph_roots:
        raise GraphError("both vertices must be roots")
    start = [tuple(int(i == s) for i in range(g.n)), tuple(int(i == r) for i in range(g.n))]
    if start[0] == start[1]:
        return True
    seen = [{start[0]}, {start[1]}]
    frontier = [deque([start[0]]), deque([start[1]])]
    spent = 0
    while frontier[0] or frontier[1]:
        for side in (0, 1):
            if not frontier[side]:
                continue
            state = frontier[side].popleft()
            for v in range(g.n):
                if state[v] and any(g.adj[v]):
                    if spent >= budget:
                        return None
                    spent += 1
                    nxt = tuple(c - (i == v) + g.adj[v][i] for i, c in enumerate(state))
                    if nxt in seen[1 - side]:
                        return True
                    if nxt not in seen[side]:
                        seen[side].add(nxt)
                        frontier[side].append(nxt)
    return None
