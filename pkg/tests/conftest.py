import numpy as np
import pytest

from detgraph import WeightedGraph


@pytest.fixture
def triangle():
    return WeightedGraph(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def square_with_chord():
    rng = np.random.default_rng(20240601)
    return WeightedGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
                         rng.uniform(0.5, 2.0, 5))


def random_connected_graph(rng: np.random.Generator, num_edges: int,
                           min_b1: int = 0, min_vertices: int = 2) -> WeightedGraph:
    """Random connected multigraph with the given edge count and cycle rank."""
    max_vertices = num_edges + 1 - min_b1
    lo = max(min_vertices, 2, max_vertices // 2)
    if lo > max_vertices:
        raise ValueError("infeasible instance: too few edges for the "
                         "requested vertex and cycle counts")
    num_vertices = int(rng.integers(lo, max_vertices + 1))
    edges = []
    for v in range(1, num_vertices):
        edges.append((int(rng.integers(0, v)), v))
    while len(edges) < num_edges:
        u = int(rng.integers(0, num_vertices))
        w = int(rng.integers(0, num_vertices))
        if u == w:
            continue  # keep random instances loop-free; loops are tested separately
        edges.append((u, w) if rng.random() < 0.5 else (w, u))
    weights = rng.uniform(0.5, 2.0, num_edges)
    return WeightedGraph(num_vertices, edges, weights)
