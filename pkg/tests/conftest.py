import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from hyperlap import register_hypergraph
from hyperlap.toy import toy_registry


@pytest.fixture
def toy():
    return toy_registry()


def random_hypergraph(rng: np.random.Generator, max_vertices: int = 8, max_edges: int = 12, max_size: int = 5):
    nv = int(rng.integers(1, max_vertices + 1))
    ne = int(rng.integers(0, max_edges + 1))
    edges = []
    for _ in range(ne):
        size = int(rng.integers(1, min(max_size, nv) + 1))
        edges.append(tuple(rng.choice(nv, size, replace=False).tolist()))
    return register_hypergraph(range(nv), edges)


def simplicial_closure(edges):
    closed = set()
    for e in edges:
        for k in range(1, len(e) + 1):
            closed.update(itertools.combinations(sorted(e), k))
    return sorted(closed, key=lambda s: (len(s), s))


@st.composite
def hypergraphs(draw, max_vertices=8, max_edges=12, max_size=5):
    nv = draw(st.integers(1, max_vertices))
    edge = st.sets(st.integers(0, nv - 1), min_size=1, max_size=min(max_size, nv))
    edges = draw(st.lists(edge, max_size=max_edges))
    return register_hypergraph(range(nv), [tuple(e) for e in edges])


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def record(criterion: int, passed: bool, detail: str) -> None:
        line = f"{'PASS' if passed else 'FAIL'}  criterion {criterion}: {detail}"
        request.config.stash.setdefault(ACCEPTANCE, []).append(line)
        print(line)
        if not passed:
            pytest.fail(line, pytrace=False)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
