"""Shared generators and brute-force oracles.

The oracles here deliberately avoid the package's refinement and rewriting
code paths: they enumerate walks, permutations and partitions directly.
"""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import settings, strategies as st

from unfolding.graph import MultiGraph, RootedGraph, count_walks, reachable_from


settings.register_profile("default", deadline=None)
settings.load_profile("default")


def M(rows, names=None):
    return MultiGraph.from_matrix(rows, names)


def random_matrix(rng: random.Random, n: int, max_mult: int, density: float = 0.35):
    return [[rng.randint(1, max_mult) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]


def random_rooted(rng: random.Random, max_n: int = 6, max_mult: int = 3, density: float = 0.35,
                  depth: int | None = None, node_budget: int = 20000) -> RootedGraph:
    """Random rooted graph restricted to what the root reaches.

    With ``depth`` set, graphs whose depth-``depth`` unfolding exceeds
    ``node_budget`` nodes are resampled.
    """
    while True:
        n = rng.randint(1, max_n)
        g = M(random_matrix(rng, n, max_mult, density))
        root = rng.randrange(n)
        sub, keep = g.induced(reachable_from(g, root))
        rg = RootedGraph(sub, keep.index(root))
        if depth is None or count_walks(rg.graph, rg.root, depth) <= node_budget:
            return rg


def random_lift(rng: random.Random, g: RootedGraph, copies: int = 2) -> RootedGraph:
    """Random covering graph of ``g``: same unfolding from the lifted root."""
    n = g.n
    adj = [[0] * (n * copies) for _ in range(n * copies)]
    for u in range(n):
        for v in range(n):
            for _ in range(g.graph.adj[u][v]):
                perm = list(range(copies))
                rng.shuffle(perm)
                for i in range(copies):
                    adj[u * copies + i][v * copies + perm[i]] += 1
    big = M(adj)
    root = g.root * copies
    sub, keep = big.induced(reachable_from(big, root))
    return RootedGraph(sub, keep.index(root))


def random_relabel(rng: random.Random, g: RootedGraph) -> RootedGraph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return RootedGraph(g.graph.relabel(perm), perm[g.root])


def enumerate_walks(g: MultiGraph, root: int, max_len: int) -> list[tuple]:
    """All walks from ``root`` with at most ``max_len`` steps, as edge tuples."""
    out = []

    def go(v, steps):
        out.append(tuple(steps))
        if len(steps) == max_len:
            return
        for w in range(g.n):
            for k in range(g.adj[v][w]):
                steps.append((v, w, k))
                go(w, steps)
                steps.pop()

    go(root, [])
    return out


def explicit_tree_iso(t1, a: int, t2, b: int) -> bool:
    """Backtracking rooted-tree isomorphism on UnfoldTree nodes."""
    c1, c2 = t1.children[a], t2.children[b]
    if len(c1) != len(c2):
        return False
    used = [False] * len(c2)

    def assign(i):
        if i == len(c1):
            return True
        for j, y in enumerate(c2):
            if not used[j] and explicit_tree_iso(t1, c1[i], t2, y):
                used[j] = True
                if assign(i + 1):
                    return True
                used[j] = False
        return False

    return assign(0)


def brute_force_iso(g: MultiGraph, h: MultiGraph, root_g: int | None = None, root_h: int | None = None):
    """First vertex bijection (as dict) preserving all multiplicities, or None."""
    if g.n != h.n:
        return None
    for perm in itertools.permutations(range(h.n)):
        if root_g is not None and perm[root_g] != root_h:
            continue
        if all(g.adj[u][v] == h.adj[perm[u]][perm[v]] for u in range(g.n) for v in range(g.n)):
            return dict(enumerate(perm))
    return None


def set_partitions(items):
    """All set partitions of ``items`` as lists of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def all_matrices(n: int, max_mult: int):
    for cells in itertools.product(range(max_mult + 1), repeat=n * n):
        yield [list(cells[i * n:(i + 1) * n]) for i in range(n)]


@st.composite
def matrices(draw, max_n=5, max_mult=2):
    n = draw(st.integers(1, max_n))
    return [[draw(st.integers(0, max_mult)) for _ in range(n)] for _ in range(n)]


@st.composite
def rooted_graphs(draw, max_n=5, max_mult=2):
    g = M(draw(matrices(max_n, max_mult)))
    root = draw(st.integers(0, g.n - 1))
    sub, keep = g.induced(reachable_from(g, root))
    return RootedGraph(sub, keep.index(root))


@pytest.fixture
def rng():
    return random.Random(20261015)


_REPORT = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one acceptance line; returns whether the criterion passed."""
    lines = request.config.stash.setdefault(_REPORT, [])

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        print(line)
        lines.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_REPORT, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
