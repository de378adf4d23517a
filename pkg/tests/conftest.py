import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from colorsat.graph import EdgeColoredGraph


def random_graph(rng: random.Random, n: int, t: int, p: float = 0.5) -> EdgeColoredGraph:
    edges = [(u, v, rng.randint(1, t)) for u, v in combinations(range(n), 2) if rng.random() < p]
    return EdgeColoredGraph(n, t, edges)


@st.composite
def graphs(draw, max_n=7, max_t=3, min_n=1):
    n = draw(st.integers(min_n, max_n))
    t = draw(st.integers(1, max_t))
    pairs = list(combinations(range(n), 2))
    colors = draw(st.lists(st.integers(0, t), min_size=len(pairs), max_size=len(pairs)))
    return EdgeColoredGraph(n, t, [(u, v, c) for (u, v), c in zip(pairs, colors) if c])


@pytest.fixture
def rng():
    return random.Random(20240917)
