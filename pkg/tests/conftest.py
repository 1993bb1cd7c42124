import random

import networkx as nx
import pytest

from nowheredense import generators as gen
from nowheredense.graph import Graph


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def nx_distances(G: Graph) -> dict[int, dict[int, int]]:
    return dict(nx.all_pairs_shortest_path_length(to_nx(G)))


def sparse_corpus(count: int, max_n: int, seed: int, min_n: int = 1) -> list[Graph]:
    """Mixed family: sparse random graphs, trees, outerplanar graphs, cycles."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(min_n, max_n)
        kind = i % 4
        if kind == 0:
            out.append(gen.random_sparse(n, rng.uniform(0.5, 4.0), rng))
        elif kind == 1:
            out.append(gen.random_tree(n, rng))
        elif kind == 2 and n >= 3:
            out.append(gen.random_outerplanar(n, rng))
        else:
            out.append(gen.cycle(n) if n >= 3 else gen.path(n))
    return out


@pytest.fixture
def p5() -> Graph:
    return gen.path(5)
