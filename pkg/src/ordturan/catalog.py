"""Constructors for the named ordered-graph families used across the library.

Families (all on {1..n} with the natural order):

* ``P_k``      monotone path on k vertices.
* ``Q_{a,b}``  monotone path on 1+a+b vertices plus the chord (1, 1+a).
* ``B_{a,n}``  union of the unit-step path on {1..n} and the a-step path
               on {1, a+1, 2a+1, ..., n}.
* ``M_j``      consecutive matching {(2i-1, 2i)}.
* ``H_d``      recursive host: two copies of H_{d-1} wrapped in a nested
               matching of 2^{d-1} outer edges.
* stair graph  on {1..t}: all edges (i, j) with i < j, i odd, j even.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .ordgraph import Edge, OrderedGraph, graph

H_D_MAX = 12


def build_P(k: int) -> OrderedGraph:
    """Monotone path on k >= 2 vertices."""
    if k < 2:
        raise ValueError(f"path needs k >= 2, got {k}")
    return graph(k, [(i, i + 1) for i in range(1, k)])


def build_Q(a: int, b: int) -> OrderedGraph:
    """Monotone path on 1+a+b vertices plus the chord (1, 1+a).

    Requires a >= 2 and b >= 1; edge count is a+b+1.
    """
    if a < 2:
        raise ValueError(f"need a >= 2, got {a}")
    if b < 1:
        raise ValueError(f"need b >= 1, got {b}")
    n = 1 + a + b
    edges = [(i, i + 1) for i in range(1, n)]
    edges.append((1, 1 + a))
    return graph(n, edges)


def build_B(a: int, n: int) -> OrderedGraph:
    """Union of the unit-step path on {1..n} and the a-step path
    {1, a+1, 2a+1, ..., n}.

    Requires a >= 2 and n-1 divisible by a; with l = (n-1)/a the edge count
    is (a+1)*l (the two paths never share an edge since a >= 2).
    """
    if a < 2:
        raise ValueError(f"need a >= 2, got {a}")
    if n < a + 1:
        raise ValueError(f"need n >= a+1, got n={n}")
    if (n - 1) % a != 0:
        raise ValueError(f"n-1 must be divisible by a, got n={n}, a={a}")
    edges = [(i, i + 1) for i in range(1, n)]
    edges += [(i, i + a) for i in range(1, n, a) if i + a <= n]
    return graph(n, edges)


def build_M(j: int) -> OrderedGraph:
    """Consecutive matching with j edges: {(1,2), (3,4), ..., (2j-1, 2j)}."""
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    return graph(2 * j, [(2 * i - 1, 2 * i) for i in range(1, j + 1)])


def build_pattern(edges: Iterable[Sequence[int]], n: int | None = None) -> OrderedGraph:
    """Ordered graph with exactly the given edges.

    The vertex count defaults to the largest endpoint (0 for no edges).
    """
    pairs: list[Edge] = []
    for e in edges:
        try:
            u, v = e
        except (TypeError, ValueError):
            raise ValueError(f"malformed edge {e!r}") from None
        pairs.append((int(u), int(v)))
    if n is None:
        n = max((max(p) for p in pairs), default=0)
    return graph(n, pairs)


def build_H_d(d: int) -> OrderedGraph:
    """Recursive nested-matching host.

    H_1 is the single edge; H_d places two copies of H_{d-1} side by side and
    wraps them in a nested matching of 2^{d-1} outer edges.  Vertices are
    relabeled depth-first left to right, giving d*2^d vertices and d*2^{d-1}
    edges.  Guarded to d <= 12.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if d > H_D_MAX:
        raise ValueError(f"d <= {H_D_MAX} required, got {d}")
    if d == 1:
        return graph(2, [(1, 2)])
    inner = build_H_d(d - 1)
    half = 2 ** (d - 1)
    m = inner.n
    n = 2 * m + 2 * half
    edges: list[Edge] = [(i, n + 1 - i) for i in range(1, half + 1)]
    for u, v in inner.sorted_edges:
        edges.append((u + half, v + half))
        edges.append((u + half + m, v + half + m))
    return graph(n, edges)


def build_H_stair(t: int) -> OrderedGraph:
    """Parity stair graph on {1..t}: edges (i, j) with i < j, i odd, j even.

    Every edge runs odd -> even, so no two edges concatenate into a monotone
    path on three vertices.
    """
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    edges = [
        (i, j)
        for i in range(1, t + 1, 2)
        for j in range(i + 1, t + 1)
        if j % 2 == 0
    ]
    return graph(t, edges)
