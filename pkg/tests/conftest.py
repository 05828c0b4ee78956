import pytest

from toughham.graph import Graph
from toughham.generators import SplitMix64


def cycle_graph(n):
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph.from_edge_list(n, [(u, v) for u in range(n) for v in range(u)])


def path_graph(n):
    return Graph.from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves):
    return Graph.from_edge_list(leaves + 1, [(0, i + 1) for i in range(leaves)])


def complete_bipartite(a, b):
    return Graph.from_edge_list(a + b, [(u, a + v) for u in range(a)
                                        for v in range(b)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edge_list(10, outer + spokes + inner)


def random_graph(n, rng, p=0.5):
    adj = [0] * n
    for u in range(n):
        for v in range(u):
            if rng.chance(p):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, tuple(adj))


@pytest.fixture
def rng():
    return SplitMix64(0x5EED)
