import random

from conftest import M, random_lift, random_relabel, random_rooted
from unfolding.graph import RootedGraph, tree_hash, unfold
from unfolding.isodecide import distinguishing_depth, truncated_iso_oracle, unfolding_iso
from unfolding.refine import is_graph_isomorphism

LOOP = RootedGraph(M([[1]]), 0)
LOOP2 = RootedGraph(M([[2]]), 0)
TWO_CYCLE = RootedGraph(M([[0, 1], [1, 0]]), 0)


def test_examples():
    assert unfolding_iso(TWO_CYCLE, LOOP).isomorphic
    assert unfolding_iso(RootedGraph(M([[2, 1], [1, 2]]), 0), RootedGraph(M([[3]]), 0)).isomorphic
    g = M([[0, 2], [1, 0]])
    verdict = unfolding_iso(RootedGraph(g, 0), RootedGraph(g, 1))
    assert not verdict.isomorphic and verdict.depth == 1


def test_oracle_examples():
    assert truncated_iso_oracle(LOOP, LOOP)
    assert not truncated_iso_oracle(LOOP, LOOP2)
    assert truncated_iso_oracle(TWO_CYCLE, LOOP)


def _check_certificate(g, h):
    v = unfolding_iso(g, h)
    if v.isomorphic:
        assert is_graph_isomorphism(v.reduced_g.graph, v.reduced_h.graph, v.bijection)
        assert v.bijection[v.reduced_g.root] == v.reduced_h.root
    else:
        d = v.depth
        assert tree_hash(unfold(g, d)) != tree_hash(unfold(h, d))
        if d > 0:
            assert tree_hash(unfold(g, d - 1)) == tree_hash(unfold(h, d - 1))
    return v.isomorphic


def test_certificates_are_valid():
    rng = random.Random(21)
    for _ in range(150):
        g = random_rooted(rng, max_n=4, max_mult=2, depth=8, node_budget=5000)
        h = random_lift(rng, g) if rng.random() < 0.5 else random_rooted(rng, max_n=4, max_mult=2, depth=8, node_budget=5000)
        _check_certificate(g, h)


def test_distinguishing_depth_none_for_isomorphic():
    assert distinguishing_depth(TWO_CYCLE, LOOP) is None


def test_lift_and_relabel_invariance():
    rng = random.Random(22)
    for _ in range(100):
        g = random_rooted(rng, max_n=5)
        h = random_rooted(rng, max_n=5)
        base = unfolding_iso(g, h).isomorphic
        assert unfolding_iso(random_relabel(rng, g), h).isomorphic == base
        assert unfolding_iso(g, random_relabel(rng, h)).isomorphic == base
        assert unfolding_iso(random_lift(rng, g), g).isomorphic


def test_equivalence_relation():
    rng = random.Random(23)
    pool = [random_rooted(rng, max_n=3, max_mult=2, density=0.5) for _ in range(40)]
    pool += [random_lift(rng, g) for g in pool[:10]]
    rel = [[unfolding_iso(a, b).isomorphic for b in pool] for a in pool]
    n = len(pool)
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
            for k in range(n):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]
