"""Ordered graphs on {1..n} and their order-sensitive invariants.

An ordered graph is a finite simple graph whose vertex set {1..n} carries
the natural linear order; subgraphs inherit the order.  Containment is
non-induced throughout: a copy of a pattern F in a host G is an
order-preserving injection of V(F) into V(G) that carries edges to edges
(non-edges of F are unconstrained).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from . import matching3

Edge = tuple[int, int]


@dataclass(frozen=True)
class OrderedGraph:
    """Immutable graph on vertex set {1..n} with edges (u, v), u < v.

    Isolated vertices are allowed: n may exceed the largest endpoint.
    """

    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def up_adj(self) -> tuple[tuple[int, ...], ...]:
        """up_adj[v] = sorted neighbors of v that are larger than v (index 0 unused)."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.sorted_edges:
            adj[u].append(v)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def down_adj(self) -> tuple[tuple[int, ...], ...]:
        """down_adj[v] = sorted neighbors of v that are smaller than v."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.sorted_edges:
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.up_adj[v]) + len(self.down_adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def without_edges(self, removed: Iterable[Edge]) -> "OrderedGraph":
        gone = {tuple(sorted(e)) for e in removed}
        return OrderedGraph(self.n, frozenset(self.edges - gone))

    def __repr__(self) -> str:
        return f"OrderedGraph(n={self.n}, edges={sorted(self.edges)})"


def graph(n: int, edges: Iterable[Sequence[int]]) -> OrderedGraph:
    """Build an OrderedGraph, normalizing each pair to ascending order."""
    norm = set()
    for e in edges:
        u, v = e
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        norm.add((min(u, v), max(u, v)))
    return OrderedGraph(n, frozenset(norm))


@dataclass(frozen=True)
class Embedding:
    """An order-preserving copy of a pattern: phi[i-1] hosts pattern vertex i."""

    pattern_size: int
    phi: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.phi) != self.pattern_size:
            raise ValueError("phi length must equal pattern_size")
        if any(a >= b for a, b in zip(self.phi, self.phi[1:])):
            raise ValueError("phi must be strictly increasing")

    def edge_image(self, pattern: OrderedGraph) -> frozenset[Edge]:
        """Host edges used by this copy of `pattern`."""
        return frozenset((self.phi[u - 1], self.phi[v - 1]) for u, v in pattern.edges)


# ---------------------------------------------------------------------------
# invariants


def chi_interval(g: OrderedGraph) -> int:
    """Minimum number of consecutive intervals partitioning {1..n} with every
    interval independent.

    Single left-to-right pass, cutting as late as possible.  This greedy is
    optimal: each greedy interval is maximal, so by induction any valid
    partition's i-th cut point cannot lie to the right of the greedy's, and
    thus needs at least as many intervals.
    """
    count = 0
    start = 1
    down = g.down_adj
    for v in range(1, g.n + 1):
        if v == start:
            continue
        if any(u >= start for u in down[v]):
            count += 1
            start = v
    if g.n >= 1:
        count += 1
    return count


def ell_monotone(g: OrderedGraph) -> int:
    """Vertex count of the longest monotone (increasing) path.

    Longest-path DP over edges oriented low-to-high; the orientation makes
    the digraph acyclic.  Returns 1 for a nonempty edgeless graph, 0 for the
    empty graph.
    """
    best = [0] * (g.n + 1)
    for v in range(1, g.n + 1):
        best[v] = 1
        for u in g.down_adj[v]:
            if best[u] + 1 > best[v]:
                best[v] = best[u] + 1
    return max(best[1:], default=0)


def chromatic_number(g: OrderedGraph) -> int:
    """Exact (unordered) chromatic number by backtracking; guarded to n <= 20."""
    if g.n > 20:
        raise ValueError(f"chromatic_number limited to n <= 20, got n={g.n}")
    if g.n == 0:
        return 0
    if not g.edges:
        return 1
    if _is_bipartite(g):
        return 2

    # vertices in descending-degree order helps the backtracking cut early
    order = sorted(range(1, g.n + 1), key=lambda v: -g.degree(v))
    pos = {v: i for i, v in enumerate(order)}
    neighbors = [
        [pos[u] for u in (*g.up_adj[v], *g.down_adj[v])] for v in order
    ]

    def colorable(k: int) -> bool:
        colors = [-1] * g.n

        def assign(i: int, used: int) -> bool:
            if i == g.n:
                return True
            seen = {colors[j] for j in neighbors[i] if colors[j] >= 0}
            # allow at most one brand-new color to break symmetry
            for c in range(min(used + 1, k)):
                if c in seen:
                    continue
                colors[i] = c
                if assign(i + 1, max(used, c + 1)):
                    return True
                colors[i] = -1
            return False

        return assign(0, 0)

    k = 3
    while not colorable(k):
        k += 1
    return k


def has_odd_cycle(g: OrderedGraph) -> bool:
    """True iff the unordered shadow of g is not bipartite (parity BFS)."""
    return not _is_bipartite(g)


def _is_bipartite(g: OrderedGraph) -> bool:
    side = [-1] * (g.n + 1)
    for s in range(1, g.n + 1):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for u in (*g.up_adj[v], *g.down_adj[v]):
                if side[u] < 0:
                    side[u] = side[v] ^ 1
                    queue.append(u)
                elif side[u] == side[v]:
                    return False
    return True


# ---------------------------------------------------------------------------
# embedding search

# The search engine maps pattern vertices 1..k in order, so embeddings come
# out in lexicographic phi order.  `pinned` pre-assigns host vertices to some
# pattern vertices (used for incremental copy checks in the solver).


def _embed_search(
    host_n: int,
    host_up: Sequence[Sequence[int]],
    pattern: OrderedGraph,
    pinned: Optional[dict[int, int]] = None,
    limit: Optional[int] = None,
) -> tuple[list[tuple[int, ...]], int]:
    """Backtracking search for order-preserving edge-respecting injections.

    Returns (list of phi tuples, nodes visited).  Stops after `limit` hits.
    """
    k = pattern.n
    if k == 0:
        raise ValueError("pattern must have at least one vertex")
    results: list[tuple[int, ...]] = []
    nodes = 0
    if k > host_n:
        return results, nodes

    pinned = pinned or {}
    back = [tuple(pattern.down_adj[i]) for i in range(k + 1)]
    fwd_deg = [len(pattern.up_adj[i]) for i in range(k + 1)]
    # position windows implied by strict monotonicity and any pins
    lo = [0] * (k + 2)
    hi = [0] * (k + 2)
    for i in range(1, k + 1):
        lo[i] = i
        hi[i] = host_n - (k - i)
        for j, pv in pinned.items():
            if j < i:
                lo[i] = max(lo[i], pv + (i - j))
            elif j > i:
                hi[i] = min(hi[i], pv - (j - i))
            else:
                lo[i] = max(lo[i], pv)
                hi[i] = min(hi[i], pv)

    phi = [0] * (k + 1)
    # pattern vertices with edges to later vertices, used for look-ahead
    watchers = [i for i in range(1, k + 1) if fwd_deg[i] > 0]

    def candidates(i: int) -> Iterator[int]:
        a = max(lo[i], phi[i - 1] + 1) if i > 1 else lo[i]
        b = hi[i]
        if a > b:
            return
        if back[i]:
            # intersect sorted up-neighbor lists of the already-mapped ends
            base = host_up[phi[back[i][0]]]
            for x in base:
                if x < a:
                    continue
                if x > b:
                    break
                if all(x in host_up[phi[j]] for j in back[i][1:]):
                    yield x
        else:
            yield from range(a, b + 1)

    def extend(i: int) -> bool:
        nonlocal nodes
        if i > k:
            results.append(tuple(phi[1:]))
            return limit is not None and len(results) >= limit
        for x in candidates(i):
            nodes += 1
            if fwd_deg[i] > 0 and len(host_up[x]) < fwd_deg[i]:
                continue
            phi[i] = x
            # look-ahead: every mapped watcher with a pending later edge must
            # still have an up-neighbor beyond the current frontier
            ok = True
            for w in watchers:
                if w > i:
                    break
                if any(q > i for q in pattern.up_adj[w]):
                    ups = host_up[phi[w]]
                    if not ups or ups[-1] <= x:
                        ok = False
                        break
            if ok and extend(i + 1):
                return True
            phi[i] = 0
        return False

    extend(1)
    return results, nodes


def enumerate_embeddings(
    g: OrderedGraph, f: OrderedGraph, limit: Optional[int] = None
) -> list[Embedding]:
    """All copies of pattern f in host g, in lexicographic phi order.

    Deterministic; truncated after `limit` embeddings when given.
    """
    maps, _ = _embed_search(g.n, g.up_adj, f, limit=limit)
    return [Embedding(f.n, m) for m in maps]


def contains(g: OrderedGraph, f: OrderedGraph) -> bool:
    """True iff g contains at least one copy of f.

    Patterns that are spanning three-edge matchings go through the segment
    order-type test, which agrees with the backtracking search but scales to
    large matching hosts.
    """
    trio = matching3.compile_pattern(f.n, f.sorted_edges)
    if trio is not None:
        ls, rs = matching3.segments_of(g.sorted_edges)
        return matching3.full_contains(ls, rs, trio)
    maps, _ = _embed_search(g.n, g.up_adj, f, limit=1)
    return bool(maps)


# ---------------------------------------------------------------------------
# constructions


def blowup(f: OrderedGraph, k: int) -> OrderedGraph:
    """Replace each vertex by an interval of k consecutive clones.

    Clones of i and j are joined iff (i, j) is an edge; clones of one vertex
    stay independent.  Edge count scales by k^2.
    """
    if k < 1:
        raise ValueError(f"blow-up factor must be >= 1, got {k}")
    edges = set()
    for u, v in f.edges:
        for a in range(k):
            for b in range(k):
                edges.add(((u - 1) * k + a + 1, (v - 1) * k + b + 1))
    return OrderedGraph(f.n * k, frozenset(edges))


def plus_I(f: OrderedGraph, positions: Iterable[int]) -> OrderedGraph:
    """Two vertex-disjoint copies of f on {1..2n}: one on the given positions
    (in order), one on the complement (in order)."""
    pos = sorted(set(positions))
    n = f.n
    if len(pos) != n:
        raise ValueError(f"need exactly {n} positions, got {len(pos)}")
    if pos and not (1 <= pos[0] and pos[-1] <= 2 * n):
        raise ValueError("positions must lie in {1..2n}")
    comp = sorted(set(range(1, 2 * n + 1)) - set(pos))
    edges = set()
    for u, v in f.edges:
        edges.add((pos[u - 1], pos[v - 1]))
        edges.add((comp[u - 1], comp[v - 1]))
    return OrderedGraph(2 * n, frozenset(edges))


# ---------------------------------------------------------------------------
# canonical file format: {"n": int, "edges": [[u, v], ...]} with each pair
# ascending and the edge array sorted lexicographically


def dumps_graph(g: OrderedGraph) -> str:
    payload = {"n": g.n, "edges": [list(e) for e in g.sorted_edges]}
    return json.dumps(payload, separators=(", ", ": ")) + "\n"


def loads_graph(text: str) -> OrderedGraph:
    payload = json.loads(text)
    if not isinstance(payload, dict) or "n" not in payload or "edges" not in payload:
        raise ValueError("graph file must be an object with fields 'n' and 'edges'")
    n = payload["n"]
    edges = payload["edges"]
    if not isinstance(n, int) or not isinstance(edges, list):
        raise ValueError("malformed graph file")
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2):
            raise ValueError(f"malformed edge entry {e!r}")
    return graph(n, edges)


def save_graph(g: OrderedGraph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_graph(g))


def load_graph(path: str) -> OrderedGraph:
    with open(path) as fh:
        return loads_graph(fh.read())
