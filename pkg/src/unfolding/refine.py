"""Coarsest stable partitions, quotients and bisimulation matching.

Two vertices share a class of the coarsest stable partition exactly when
their unfolding trees are isomorphic, so quotienting by it yields the unique
non-redundant graph with the same unfolding tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import GraphError, MultiGraph, RootedGraph, disjoint_union


class UnstablePartitionError(GraphError):
    pass


class RedundantGraphError(GraphError):
    pass


@dataclass(frozen=True)
class Partition:
    """Vertex to class map with classes numbered ``0..class_count-1``."""

    class_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "class_of", tuple(self.class_of))
        if set(self.class_of) != set(range(self.class_count)):
            raise GraphError("class ids must be exactly 0..class_count-1")

    @property
    def class_count(self) -> int:
        return max(self.class_of) + 1 if self.class_of else 0

    @classmethod
    def from_labels(cls, labels: Sequence) -> Partition:
        """Renumber arbitrary hashable labels by first occurrence."""
        ids: dict = {}
        return cls(tuple(ids.setdefault(lab, len(ids)) for lab in labels))

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(tuple(range(n)))

    @classmethod
    def single(cls, n: int) -> Partition:
        return cls((0,) * n)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.class_count)]
        for v, c in enumerate(self.class_of):
            out[c].append(v)
        return out

    def is_discrete(self) -> bool:
        return self.class_count == len(self.class_of)

    def refines(self, other: Partition) -> bool:
        """True if every class of ``self`` lies inside a class of ``other``."""
        image: dict[int, int] = {}
        return all(image.setdefault(a, b) == b for a, b in zip(self.class_of, other.class_of))


def _class_counts(g: MultiGraph, class_of: Sequence[int], k: int, u: int) -> tuple[int, ...]:
    counts = [0] * k
    for w, c in enumerate(g.adj[u]):
        if c:
            counts[class_of[w]] += c
    return tuple(counts)


def is_stable(g: MultiGraph, p: Partition) -> bool:
    if len(p.class_of) != g.n:
        raise GraphError("partition does not cover the graph")
    k = p.class_count
    seen: dict[int, tuple[int, ...]] = {}
    for u in range(g.n):
        sig = _class_counts(g, p.class_of, k, u)
        if seen.setdefault(p.class_of[u], sig) != sig:
            return False
    return True


def refinement_rounds(g: MultiGraph, seed: Partition | None = None) -> list[Partition]:
    """All partitions produced by signature refinement, seed first, fixed point last."""
    if seed is None:
        seed = Partition.single(g.n)
    elif len(seed.class_of) != g.n:
        raise GraphError("seed partition does not cover the graph")
    current = Partition.from_labels(seed.class_of)
    rounds = [current]
    while True:
        k = current.class_count
        sigs = [(current.class_of[u], _class_counts(g, current.class_of, k, u)) for u in range(g.n)]
        nxt = Partition.from_labels(sigs)
        if nxt.class_count == k:
            return rounds
        rounds.append(nxt)
        current = nxt


def coarsest_stable_partition(g: MultiGraph, seed: Partition | None = None) -> Partition:
    return refinement_rounds(g, seed)[-1]


def quotient(g: MultiGraph, p: Partition) -> tuple[MultiGraph, tuple[int, ...]]:
    """Quotient graph; vertex ``C`` is named after its least-index member."""
    if not is_stable(g, p):
        raise UnstablePartitionError("partition is not stable")
    k = p.class_count
    reps = [members[0] for members in p.classes()]
    adj = [list(_class_counts(g, p.class_of, k, rep)) for rep in reps]
    return MultiGraph.from_matrix(adj, [g.names[r] for r in reps]), p.class_of


def is_non_redundant(g: MultiGraph) -> bool:
    return coarsest_stable_partition(g).is_discrete()


def reduce(g: RootedGraph) -> tuple[RootedGraph, Partition]:
    p = coarsest_stable_partition(g.graph)
    q, class_of = quotient(g.graph, p)
    return RootedGraph(q, class_of[g.root]), p


def matched_classes(g: MultiGraph, h: MultiGraph) -> Partition:
    """Coarsest stable partition of ``g`` followed by ``h`` (disjoint union)."""
    return coarsest_stable_partition(disjoint_union(g, h))


def _require_non_redundant(*graphs: MultiGraph) -> None:
    for g in graphs:
        if not is_non_redundant(g):
            raise RedundantGraphError("input graph is not non-redundant")


def _match(g: MultiGraph, h: MultiGraph) -> dict[int, int] | None:
    if g.n != h.n:
        return None
    p = matched_classes(g, h)
    n = g.n
    mapping = {}
    for members in p.classes():
        if len(members) != 2 or not (members[0] < n <= members[1]):
            return None
        mapping[members[0]] = members[1] - n
    return mapping


def rooted_iso_nonredundant(g: RootedGraph, h: RootedGraph) -> dict[int, int] | None:
    """Rooted isomorphism of two non-redundant graphs, as a vertex map, or None."""
    _require_non_redundant(g.graph, h.graph)
    mapping = _match(g.graph, h.graph)
    if mapping is None or mapping[g.root] != h.root:
        return None
    return mapping


def graph_iso_nonredundant(g: MultiGraph, h: MultiGraph) -> dict[int, int] | None:
    _require_non_redundant(g, h)
    return _match(g, h)


def is_graph_isomorphism(g: MultiGraph, h: MultiGraph, mapping: dict[int, int]) -> bool:
    """Check that ``mapping`` is a bijection preserving every edge multiplicity."""
    if g.n != h.n or sorted(mapping) != list(range(g.n)) or sorted(mapping.values()) != list(range(h.n)):
        return False
    return all(g.adj[u][v] == h.adj[mapping[u]][mapping[v]] for u in range(g.n) for v in range(g.n))
