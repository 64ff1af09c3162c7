"""The graph monoid and its word problem.

The graph monoid of ``G`` is the commutative monoid generated by the
vertices subject to ``v = sum of the targets of v's out-edges`` for every
non-sink ``v``.  Elements are coefficient vectors over the vertices.  Word
problems are solved by completing the defining relations to a canonical
rewriting system over N^n (the commutative analogue of Knuth-Bendix), using
the graded-lexicographic order: total degree first, ties broken by the
coefficient of the highest-index vertex, then the next one down.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .graph import MultiGraph

Element = tuple[int, ...]


def glex_key(v: Sequence[int]) -> tuple:
    return (sum(v), tuple(reversed(v)))


def unit(n: int, i: int, coeff: int = 1) -> Element:
    return tuple(coeff if j == i else 0 for j in range(n))


def _geq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Rule:
    lhs: Element
    rhs: Element

    def __post_init__(self):
        if not any(self.lhs):
            raise ValueError("rule left-hand side must be nonzero")
        if glex_key(self.lhs) <= glex_key(self.rhs):
            raise ValueError("rule must decrease the term order")

    def applies(self, v: Sequence[int]) -> bool:
        return _geq(v, self.lhs)


@dataclass(frozen=True)
class RewriteSystem:
    n: int
    rules: tuple[Rule, ...]

    def normal_form(self, m: Sequence[int]) -> Element:
        return normal_form(self, m)


def defining_relations(g: MultiGraph) -> list[tuple[Element, Element]]:
    return [(unit(g.n, v), tuple(g.adj[v])) for v in range(g.n) if any(g.adj[v])]


def _reduce(rules: Sequence[tuple[Element, Element]], m: Sequence[int]) -> Element:
    v = list(m)
    n = len(v)
    while True:
        for lhs, rhs in rules:
            if all(v[i] >= lhs[i] for i in range(n)):
                diff = [lhs[i] - rhs[i] for i in range(n)]
                times = 1
                if min(diff) >= 0:
                    # the rule shrinks v, so it stays the first applicable one
                    times = min((v[i] - lhs[i]) // diff[i] for i in range(n) if diff[i] > 0) + 1
                for i in range(n):
                    v[i] -= times * diff[i]
                break
        else:
            return tuple(v)


def normal_form(sys: RewriteSystem, m: Sequence[int]) -> Element:
    """Irreducible form of ``m``; always applies the first applicable rule."""
    if len(m) != sys.n:
        raise ValueError(f"element has {len(m)} coordinates, expected {sys.n}")
    return _reduce([(r.lhs, r.rhs) for r in sys.rules], m)


def _orient(a: Element, b: Element) -> tuple[Element, Element]:
    return (a, b) if glex_key(a) > glex_key(b) else (b, a)


def _critical_pair(r1: tuple[Element, Element], r2: tuple[Element, Element]) -> tuple[Element, Element] | None:
    (l1, s1), (l2, s2) = r1, r2
    if not any(x and y for x, y in zip(l1, l2)):
        # coprime left sides always join
        return None
    top = [max(x, y) for x, y in zip(l1, l2)]
    a = tuple(t - x + y for t, x, y in zip(top, l1, s1))
    b = tuple(t - x + y for t, x, y in zip(top, l2, s2))
    return a, b


def complete(relations: Iterable[tuple[Sequence[int], Sequence[int]]], n: int | None = None) -> RewriteSystem:
    """Canonical rewriting system for the congruence generated by ``relations``."""
    pending = deque((tuple(a), tuple(b)) for a, b in relations)
    if n is None:
        if not pending:
            raise ValueError("cannot infer the number of generators from no relations")
        n = len(pending[0][0])
    rules: list[tuple[Element, Element]] = []
    checked: set = set()
    while True:
        while pending:
            a, b = pending.popleft()
            a, b = _reduce(rules, a), _reduce(rules, b)
            if a == b:
                continue
            lhs, rhs = _orient(a, b)
            keep = []
            for rule in rules:
                if _geq(rule[0], lhs):
                    pending.append(rule)
                else:
                    keep.append(rule)
            rules = keep + [(lhs, rhs)]
        rules = sorted(((lhs, _reduce(rules, rhs)) for lhs, rhs in rules), key=lambda r: glex_key(r[0]))
        for r1, r2 in combinations(rules, 2):
            if (r1, r2) in checked:
                continue
            checked.add((r1, r2))
            pair = _critical_pair(r1, r2)
            if pair is not None and _reduce(rules, pair[0]) != _reduce(rules, pair[1]):
                pending.append(pair)
        if not pending:
            return RewriteSystem(n, tuple(Rule(lhs, rhs) for lhs, rhs in rules))


def check_canonical(sys: RewriteSystem) -> list[str]:
    """Independent re-check of a completed system; returns the problems found."""
    problems = []
    rules = [(r.lhs, r.rhs) for r in sys.rules]
    for i, (lhs, rhs) in enumerate(rules):
        if glex_key(lhs) <= glex_key(rhs):
            problems.append(f"rule {i} does not decrease the order")
        for j, (other, _) in enumerate(rules):
            if i != j and _geq(lhs, other):
                problems.append(f"rule {i} left side reducible by rule {j}")
        if any(_geq(rhs, other) for other, _ in rules):
            problems.append(f"rule {i} right side reducible")
    for r1, r2 in combinations(rules, 2):
        top = tuple(max(x, y) for x, y in zip(r1[0], r2[0]))
        a = tuple(t - x + y for t, x, y in zip(top, r1[0], r1[1]))
        b = tuple(t - x + y for t, x, y in zip(top, r2[0], r2[1]))
        if _reduce(rules, a) != _reduce(rules, b):
            problems.append(f"critical pair of {r1} and {r2} does not join")
    return problems


@lru_cache(maxsize=4096)
def graph_system(g: MultiGraph) -> RewriteSystem:
    """Completed system of ``g``'s graph monoid, computed once per graph."""
    return complete(defining_relations(g), g.n)


def monoid_equal(g: MultiGraph, a: Sequence[int], b: Sequence[int]) -> bool:
    sys = graph_system(g)
    return normal_form(sys, tuple(a)) == normal_form(sys, tuple(b))


def _neighbours(relations, v: Element, coord_cap: int):
    n = len(v)
    for lhs, rhs in relations:
        for src, dst in ((lhs, rhs), (rhs, lhs)):
            if all(v[i] >= src[i] for i in range(n)):
                w = tuple(v[i] - src[i] + dst[i] for i in range(n))
                if max(w, default=0) <= coord_cap:
                    yield w


def bfs_equal_oracle(g: MultiGraph, a: Sequence[int], b: Sequence[int], state_cap: int, coord_cap: int) -> bool | None:
    """Decide ``a = b`` by exploring congruence classes inside a coordinate box.

    Relations are applied in both directions; states with a coordinate above
    ``coord_cap`` are never visited, so a negative answer means the classes
    do not meet inside the box.  Returns None once more than ``state_cap``
    states have been generated.
    """
    if state_cap < 1 or coord_cap < 1:
        raise ValueError("caps must be at least 1")
    a, b = tuple(a), tuple(b)
    if a == b:
        return True
    relations = defining_relations(g)
    seen = [{a}, {b}]
    frontier = [deque([a]), deque([b])]
    total = 2
    if total > state_cap:
        return None
    while True:
        for side in (0, 1):
            if not frontier[side]:
                # one class is exhausted without meeting the other
                return False
            v = frontier[side].popleft()
            for w in _neighbours(relations, v, coord_cap):
                if w in seen[1 - side]:
                    return True
                if w not in seen[side]:
                    seen[side].add(w)
                    frontier[side].append(w)
                    total += 1
                    if total > state_cap:
                        return None


def box_congruence_classes(g: MultiGraph, coord_cap: int):
    """Component label of every state in the box ``[0, coord_cap]^n``.

    Same exploration as :func:`bfs_equal_oracle` done once for the whole box
    (sparse graph connected components); two states are box-equal iff their
    labels match.  States are indexed in mixed radix, vertex 0 least
    significant.
    """
    import numpy as np
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    n = g.n
    side = coord_cap + 1
    size = side**n
    idx = np.arange(size)
    coords = np.stack([(idx // side**i) % side for i in range(n)], axis=1) if n else np.zeros((1, 0), int)
    stride = np.array([side**i for i in range(n)], dtype=np.int64)
    rows, cols = [], []
    for lhs, rhs in defining_relations(g):
        lhs_a, rhs_a = np.array(lhs), np.array(rhs)
        moved = coords - lhs_a + rhs_a
        ok = np.all(coords >= lhs_a, axis=1) & np.all(moved <= coord_cap, axis=1)
        rows.append(idx[ok])
        cols.append(moved[ok] @ stride)
    if rows:
        r, c = np.concatenate(rows), np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels, stride


def box_index(v: Sequence[int], coord_cap: int) -> int:
    side = coord_cap + 1
    return sum(c * side**i for i, c in enumerate(v))
