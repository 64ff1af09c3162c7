"""Two-vertex graphs ``[[A, B], [C, D]]`` on vertices x, y.

Closed forms for ``x = y`` in the graph monoid, monoid-preserving matrix
moves, and the grid scan for the conjectured characterisation of the
remaining case ``(A - C)(B - D) < 0``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from .graph import MultiGraph
from .monoid import monoid_equal

log = logging.getLogger(__name__)

Cell = tuple[int, int, int, int]


class DomainError(ValueError):
    pass


def two_vertex_graph(a: int, b: int, c: int, d: int) -> MultiGraph:
    return MultiGraph.from_matrix([[a, b], [c, d]], ["x", "y"])


def roots_equal(a: int, b: int, c: int, d: int) -> bool:
    """Is ``x = y`` in the graph monoid of ``[[a, b], [c, d]]``?"""
    return monoid_equal(two_vertex_graph(a, b, c, d), (1, 0), (0, 1))


def closed_form_d0(a: int, b: int, c: int) -> bool:
    """``x = y`` for ``D = 0``: holds iff ``C = 1`` or ``B = 1`` and ``A = 0``.

    The rule describes the two-root case ``B > 0``.  With ``B = 0`` it is
    still evaluated but can be wrong: there ``x = y`` iff ``C = 1 (mod A - 1)``.
    """
    if a < 0 or b < 0:
        raise DomainError("A and B must be natural numbers")
    if c <= 0:
        raise DomainError("C must be positive so that y is a root")
    return c == 1 or (b == 1 and a == 0)


def closed_form_b1d2(a: int, c: int) -> bool:
    """``x = y`` for ``B = 1, D = 2``: holds iff ``A - C - 1`` divides ``A``."""
    if a <= 0 or c <= 0:
        raise DomainError("A and C must be positive")
    n = a - c - 1
    if n <= 0:
        raise DomainError(f"A - C - 1 = {n} must be at least 1")
    return a % n == 0


def matrix_reduce(a: int, b: int, c: int, d: int) -> Cell:
    """Shrink ``A + D`` by monoid-preserving moves until ``A = 0``, ``D = 0`` or neither move applies."""
    return reduction_steps(a, b, c, d)[-1]


def reduction_steps(a: int, b: int, c: int, d: int) -> list[Cell]:
    """Every intermediate matrix visited by :func:`matrix_reduce`, input first."""
    steps = [(a, b, c, d)]
    while True:
        nxt = matrix_reduce_once(*steps[-1])
        if nxt == steps[-1]:
            return steps
        steps.append(nxt)


def matrix_reduce_once(a: int, b: int, c: int, d: int) -> Cell:
    if a > 0 and d > 0 and b > 0 and c > 0:
        if a >= c and b >= d:
            return a - c, b - d + 1, c, d
        if c >= a and d >= b:
            return a, b, c - a + 1, d - b
    return a, b, c, d


def conjectured(a: int, b: int, c: int, d: int) -> bool:
    n = a - c - 1
    return b == 1 and d == 2 and n > 0 and a % n == 0


def scan_cells(max_value: int) -> Iterator[Cell]:
    """Non-redundant grid cells with positive entries, ``A >= D`` and ``(A - C)(B - D) < 0``.

    Cells with ``A + B = C + D`` are skipped: there x and y have isomorphic
    unfoldings, so the two-root question does not arise.
    """
    rng = range(1, max_value + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in range(1, a + 1):
                    if (a - c) * (b - d) < 0 and a + b != c + d:
                        yield a, b, c, d


def _scan_chunk(cells: list[Cell]) -> tuple[list[Cell], list[tuple[Cell, str]]]:
    found, errors = [], []
    for cell in cells:
        try:
            if roots_equal(*cell) != conjectured(*cell):
                found.append(cell)
        except Exception as exc:  # one bad cell must not sink the scan
            errors.append((cell, repr(exc)))
    return found, errors


def conjecture_scan(max_value: int, jobs: int = 1, errors: list | None = None) -> list[Cell]:
    """Cells where the monoid verdict disagrees with the conjectured predicate.

    Cells that raise are appended to ``errors`` (if given) and logged.
    """
    if max_value < 1:
        raise DomainError("max must be at least 1")
    cells = list(scan_cells(max_value))
    if jobs <= 1:
        results = [_scan_chunk(cells)]
    else:
        size = max(1, len(cells) // (jobs * 8))
        chunks = [cells[i : i + size] for i in range(0, len(cells), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_chunk, chunks))
    found = []
    for cell_found, cell_errors in results:
        found.extend(cell_found)
        for cell, message in cell_errors:
            log.error("scan cell %s failed: %s", cell, message)
            if errors is not None:
                errors.append((cell, message))
    return sorted(found)
