"""Decide whether two rooted graphs have almost isomorphic unfolding trees.

Both graphs are brought into spider normal form.  The components must match
one to one up to isomorphism; each matched pair must then have attachment
sums that are equal in the component's graph monoid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decompose import Component, SpiderDecomposition, spider_normal_form
from .graph import GraphError, MultiGraph, RootedGraph, roots, unit_vector
from .monoid import graph_system, normal_form
from .refine import graph_iso_nonredundant, is_non_redundant


@dataclass(frozen=True)
class ComponentCheck:
    """Comparison of one matched component pair.

    ``sum_g`` and ``sum_h`` are both expressed over the vertices of the
    g-side component; ``bijection`` maps g-side vertices to h-side ones.
    """

    index_g: int
    index_h: int
    graph: MultiGraph
    graph_h: MultiGraph
    bijection: dict[int, int]
    sum_g: tuple[int, ...]
    sum_h: tuple[int, ...]
    normal_g: tuple[int, ...]
    normal_h: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.normal_g == self.normal_h


@dataclass(frozen=True)
class AlmostVerdict:
    almost_isomorphic: bool
    checks: tuple[ComponentCheck, ...] = ()
    reason: str | None = None
    decomposition_g: SpiderDecomposition | None = field(default=None, repr=False)
    decomposition_h: SpiderDecomposition | None = field(default=None, repr=False)


def _is_edgeless_vertex(g: MultiGraph) -> bool:
    return g.n == 1 and g.adj[0][0] == 0


def _compare(graph: MultiGraph, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if _is_edgeless_vertex(graph):
        # free monoid on one generator: everything is already normal
        return a, b
    sys = graph_system(graph)
    return normal_form(sys, a), normal_form(sys, b)


def match_components(dg: SpiderDecomposition, dh: SpiderDecomposition) -> tuple[list[tuple[int, int, dict[int, int]]], str | None]:
    """Pair up isomorphic components; returns the pairs and a failure reason."""
    pairs = []
    used = set()
    for i, cg in enumerate(dg.components):
        for j, ch in enumerate(dh.components):
            if j in used or cg.graph.n != ch.graph.n:
                continue
            mapping = graph_iso_nonredundant(cg.graph, ch.graph)
            if mapping is not None:
                pairs.append((i, j, mapping))
                used.add(j)
                break
        else:
            return pairs, f"component {i} of the first graph has no isomorphic partner"
    for j in range(len(dh.components)):
        if j not in used:
            return pairs, f"component {j} of the second graph has no isomorphic partner"
    return pairs, None


def _check_pair(i: int, j: int, cg: Component, ch: Component, mapping: dict[int, int]) -> ComponentCheck:
    sum_g = cg.rho
    sum_h = tuple(ch.rho[mapping[v]] for v in range(cg.graph.n))
    nf_g, nf_h = _compare(cg.graph, sum_g, sum_h)
    return ComponentCheck(i, j, cg.graph, ch.graph, mapping, sum_g, sum_h, nf_g, nf_h)


def almost_iso(g: RootedGraph, h: RootedGraph) -> AlmostVerdict:
    dg, dh = spider_normal_form(g), spider_normal_form(h)
    pairs, reason = match_components(dg, dh)
    if reason is not None:
        return AlmostVerdict(False, (), reason, dg, dh)
    checks = tuple(_check_pair(i, j, dg.components[i], dh.components[j], m) for i, j, m in pairs)
    failed = [c.index_g for c in checks if not c.equal]
    if failed:
        reason = f"attachment sums differ in the graph monoid of component {failed[0]}"
    return AlmostVerdict(not failed, checks, reason, dg, dh)


def two_roots_almost_iso(g: MultiGraph, s: int | str, r: int | str) -> AlmostVerdict:
    """Compare the unfoldings of one graph from two of its roots."""
    s, r = g.index(s), g.index(r)
    graph_roots = roots(g)
    if s not in graph_roots or r not in graph_roots:
        raise GraphError("both vertices must be roots of the graph")
    if not is_non_redundant(g):
        return almost_iso(RootedGraph(g, s), RootedGraph(g, r))
    a, b = unit_vector(g.n, s), unit_vector(g.n, r)
    nf_a, nf_b = _compare(g, a, b)
    check = ComponentCheck(0, 0, g, g, {v: v for v in range(g.n)}, a, b, nf_a, nf_b)
    reason = None if check.equal else "the two roots differ in the graph monoid"
    return AlmostVerdict(check.equal, (check,), reason)
