import numpy as np

from ordturan.ordgraph import OrderedGraph, graph


def random_graph(rng: np.random.Generator, n_max: int = 9, m_max: int = 14) -> OrderedGraph:
    n = int(rng.integers(2, n_max + 1))
    want = int(rng.integers(0, min(m_max, n * (n - 1) // 2) + 1))
    edges = set()
    while len(edges) < want:
        u, v = sorted(int(x) + 1 for x in rng.choice(n, 2, replace=False))
        edges.add((u, v))
    return graph(n, edges)


def random_matching(rng: np.random.Generator, k: int) -> OrderedGraph:
    perm = [int(x) + 1 for x in rng.permutation(2 * k)]
    edges = [
        (min(perm[2 * i], perm[2 * i + 1]), max(perm[2 * i], perm[2 * i + 1]))
        for i in range(k)
    ]
    return graph(2 * k, edges)
