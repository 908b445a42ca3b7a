import random

import networkx as nx
import pytest

from structures import Multigraph, component_count, cycle_graph


def _with_extra_edges(base: Multigraph, extra: int, rng: random.Random) -> Multigraph:
    """Add loops and parallel copies of existing edges."""
    edges = list(base.edges)
    for _ in range(extra):
        if edges and rng.random() < 0.6:
            edges.append(rng.choice(edges))
        else:
            v = rng.randrange(base.n)
            edges.append((v, v))
    return Multigraph(base.n, tuple(edges))


def small_connected_multigraphs(max_vertices: int = 5, max_edges: int = 8, variants: int = 4, seed: int = 2024):
    """
    Every connected simple graph on 1..max_vertices vertices from the networkx atlas
    with at most max_edges edges, plus seeded variants carrying loops and parallel edges.
    """
    rng = random.Random(seed)
    corpus = []
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if n == 0 or n > max_vertices or not nx.is_connected(graph):
            continue
        base = Multigraph.from_networkx(graph)
        if base.m > max_edges:
            continue
        corpus.append(base)
        room = max_edges - base.m
        for _ in range(variants if room else 0):
            corpus.append(_with_extra_edges(base, rng.randint(1, room), rng))
    assert all(component_count(g) == 1 for g in corpus)
    return corpus


@pytest.fixture
def k2():
    return Multigraph(2, ((0, 1),))


@pytest.fixture
def single_loop():
    return Multigraph(1, ((0, 0),))


@pytest.fixture
def triangle():
    return Multigraph(3, ((0, 1), (1, 2), (2, 0)))


@pytest.fixture
def parallel_pair():
    return Multigraph(2, ((0, 1), (0, 1)))


@pytest.fixture
def path3():
    return Multigraph(3, ((0, 1), (1, 2)))


@pytest.fixture
def k4():
    return Multigraph.from_networkx(nx.complete_graph(4))


@pytest.fixture(scope='session')
def graph_corpus():
    return small_connected_multigraphs()


@pytest.fixture(scope='session')
def quick_corpus():
    """A smaller slice of the corpus for the per-module tests."""
    return small_connected_multigraphs(max_vertices=4, max_edges=6, variants=2) + [cycle_graph(5)]
