"""Do two rooted graphs have isomorphic unfolding trees?"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import RootedGraph, disjoint_union, tree_hash, unfold
from .refine import refinement_rounds, reduce, rooted_iso_nonredundant


@dataclass(frozen=True)
class IsoVerdict:
    """Outcome of :func:`unfolding_iso` with its witness.

    A positive verdict carries both reduced graphs and a rooted isomorphism
    between them; a negative one carries the least depth at which the
    truncated unfoldings differ.
    """

    isomorphic: bool
    reduced_g: RootedGraph
    reduced_h: RootedGraph
    bijection: dict[int, int] | None = None
    depth: int | None = None


def distinguishing_depth(g: RootedGraph, h: RootedGraph) -> int | None:
    """Least ``d`` with non-isomorphic depth-``d`` truncations, or None if none exists.

    Refinement round ``d`` on the disjoint union separates two vertices
    exactly when their depth-``d`` truncated unfoldings differ.
    """
    union = disjoint_union(g.graph, h.graph)
    r1, r2 = g.root, g.n + h.root
    for d, p in enumerate(refinement_rounds(union)):
        if p.class_of[r1] != p.class_of[r2]:
            return d
    return None


def unfolding_iso(g: RootedGraph, h: RootedGraph) -> IsoVerdict:
    rg, _ = reduce(g)
    rh, _ = reduce(h)
    mapping = rooted_iso_nonredundant(rg, rh)
    if mapping is not None:
        return IsoVerdict(True, rg, rh, bijection=mapping)
    depth = distinguishing_depth(g, h)
    if depth is None:
        raise AssertionError("reduced forms differ but the roots are bisimilar")
    return IsoVerdict(False, rg, rh, depth=depth)


def truncated_iso_oracle(g: RootedGraph, h: RootedGraph, depth: int | None = None) -> bool:
    if depth is None:
        depth = g.n + h.n
    return tree_hash(unfold(g, depth)) == tree_hash(unfold(h, depth))
