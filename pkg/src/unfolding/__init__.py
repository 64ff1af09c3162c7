"""Unfolding trees of finite rooted multigraphs: isomorphism and almost isomorphism."""

from .almost import AlmostVerdict, almost_iso, two_roots_almost_iso
from .decompose import spider_normal_form
from .graph import MultiGraph, RootedGraph, tree_hash, unfold
from .isodecide import IsoVerdict, truncated_iso_oracle, unfolding_iso
from .monoid import complete, monoid_equal, normal_form
from .refine import Partition, coarsest_stable_partition, reduce

__all__ = [
    "AlmostVerdict",
    "IsoVerdict",
    "MultiGraph",
    "Partition",
    "RootedGraph",
    "almost_iso",
    "coarsest_stable_partition",
    "complete",
    "monoid_equal",
    "normal_form",
    "reduce",
    "spider_normal_form",
    "tree_hash",
    "truncated_iso_oracle",
    "two_roots_almost_iso",
    "unfold",
    "unfolding_iso",
]
