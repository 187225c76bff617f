"""Shared oracles for the test suite.

The helpers here are deliberately naive (subset enumeration, networkx) so
they share no code with the solvers under test.
"""

from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import strategies as st

from freecayley.graph import Graph, seeded_ensemble


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def brute_omega(g: Graph) -> int:
    best = 1 if g.order else 0
    for k in range(2, g.order + 1):
        if any(all(g.has_edge(a, b) for a, b in combinations(s, 2)) for s in combinations(range(g.order), k)):
            best = k
        else:
            break
    return best


def brute_chi(g: Graph) -> int:
    n = g.order
    for k in range(0 if n == 0 else 1, n + 1):
        for col in product(range(k), repeat=n):
            if all(col[u] != col[v] for u, v in g.edges()):
                return k
    return n


@st.composite
def graphs(draw, max_order: int = 7, min_order: int = 0):
    n = draw(st.integers(min_order, max_order))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture(scope="session")
def ensemble() -> list[Graph]:
    return seeded_ensemble(2024)


# PASS/FAIL lines from tests/test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda ln: int(ln.split()[2])):
            terminalreporter.write_line(line)
