import random

import pytest
from hypothesis import strategies as st

from fzforce.digraph import Digraph


@st.composite
def digraphs(draw, max_n=6, min_n=1, loops=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, chosen, allow_loops=loops)


def random_digraph(rng: random.Random, n: int, p: float, loops: bool = False) -> Digraph:
    arcs = [(u, v) for u in range(n) for v in range(n) if (loops or u != v) and rng.random() < p]
    return Digraph(n, arcs, allow_loops=loops)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
