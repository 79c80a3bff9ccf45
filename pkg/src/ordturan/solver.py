"""Maximum pattern-free subgraphs via minimum deletion sets.

The exact route enumerates every copy of the pattern in the host and solves
minimum hitting set over their edge images by branch and bound; a streaming
fallback discovers violated copies lazily when the embedding count exceeds a
cap.  Heuristic routes (greedy insertion, bipartite half) provide feasible
subgraphs with no optimality claim.
"""

from __future__ import annotations

import time
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import matching3
from .ordgraph import (
    Edge,
    Embedding,
    OrderedGraph,
    _embed_search,
    contains,
    enumerate_embeddings,
)

DEFAULT_NODE_BUDGET = 10_000_000
DEFAULT_EMBED_CAP = 1_000_000

STATUS_OPTIMAL = "proved-optimal"
STATUS_HEURISTIC = "heuristic"
STATUS_BUDGET = "budget-exhausted"


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a max-pattern-free computation.

    `optimum` counts the edges kept by the best pattern-free subgraph found;
    it equals e(host) - len(deleted) and is the true maximum exactly when
    status is proved-optimal.
    """

    optimum: int
    deleted: tuple[Edge, ...]
    status: str
    nodes_explored: int
    wall_time: float
    seed: Optional[int] = None


def _verified_report(
    g: OrderedGraph,
    f: Optional[OrderedGraph],
    deleted: Sequence[Edge],
    status: str,
    nodes: int,
    t0: float,
    seed: Optional[int] = None,
) -> SolveReport:
    deleted = tuple(sorted(deleted))
    if f is not None and contains(g.without_edges(deleted), f):
        raise RuntimeError("internal error: reported subgraph still hosts the pattern")
    return SolveReport(
        optimum=g.e - len(deleted),
        deleted=deleted,
        status=status,
        nodes_explored=nodes,
        wall_time=time.perf_counter() - t0,
        seed=seed,
    )


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int) -> None:
        self.left = limit

    def spend(self) -> bool:
        if self.left <= 0:
            return False
        self.left -= 1
        return True


# ---------------------------------------------------------------------------
# exact solve


def min_deletion_exact(
    g: OrderedGraph,
    f: OrderedGraph,
    budget: int = DEFAULT_NODE_BUDGET,
    embed_cap: int = DEFAULT_EMBED_CAP,
) -> SolveReport:
    """Minimum number of edges whose removal destroys every copy of f.

    Branch and bound over the hitting-set formulation, with a greedy
    disjoint-copy packing as lower bound.  Among all optimal deletion sets
    the lexicographically smallest is returned.  If the node budget runs out
    the best incumbent comes back with status budget-exhausted.
    """
    if f.e == 0:
        raise ValueError("pattern must have at least one edge")
    t0 = time.perf_counter()
    edge_list = g.sorted_edges
    edge_idx = {e: i for i, e in enumerate(edge_list)}

    embeddings = enumerate_embeddings(g, f, limit=embed_cap + 1)
    nodes_box = [0]
    if len(embeddings) > embed_cap:
        deleted, status = _lazy_branch_and_bound(g, f, budget, nodes_box)
        return _verified_report(g, f, deleted, status, nodes_box[0], t0)

    sets = {frozenset(edge_idx[e] for e in emb.edge_image(f)) for emb in embeddings}
    if not sets:
        return _verified_report(g, f, (), STATUS_OPTIMAL, 0, t0)
    ordered = sorted(sets, key=lambda s: (len(s), sorted(s)))
    minimal: list[frozenset[int]] = []
    for s in ordered:
        if not any(t <= s for t in minimal):
            minimal.append(s)

    budget_box = _Budget(budget)
    best: list[Optional[tuple[int, ...]]] = [None]

    def lower_bound(unhit: list[frozenset[int]]) -> int:
        lb = 0
        used: set[int] = set()
        for s in unhit:
            if not (s & used):
                lb += 1
                used |= s
        return lb

    def search(chosen: list[int], banned: frozenset[int], unhit: list[frozenset[int]]) -> None:
        if budget_box.left <= 0:
            return
        nodes_box[0] += 1
        budget_box.spend()
        if not unhit:
            cand = tuple(sorted(chosen))
            if best[0] is None or len(cand) < len(best[0]):
                best[0] = cand
            return
        if best[0] is not None and len(chosen) + lower_bound(unhit) >= len(best[0]):
            return
        pick = min(unhit, key=lambda s: (len(s), sorted(s)))
        options = sorted(pick - banned)
        newly_banned = set()
        for e in options:
            sub_banned = banned | newly_banned
            if any(s <= sub_banned for s in unhit):
                break
            chosen.append(e)
            search(chosen, frozenset(sub_banned), [s for s in unhit if e not in s])
            chosen.pop()
            newly_banned.add(e)

    search([], frozenset(), minimal)
    exhausted = budget_box.left <= 0

    if best[0] is None:
        # budget died before any leaf; fall back to the trivial deletion set
        hit_all = sorted({min(s) for s in minimal})
        deleted = tuple(edge_list[i] for i in hit_all)
        return _verified_report(g, f, deleted, STATUS_BUDGET, nodes_box[0], t0)

    opt_size = len(best[0])
    if exhausted:
        deleted = tuple(edge_list[i] for i in best[0])
        return _verified_report(g, f, deleted, STATUS_BUDGET, nodes_box[0], t0)

    # lex refinement: commit the smallest edges that still admit an optimal
    # completion, skipping (and thereafter excluding) the ones that do not
    def feasible(required: frozenset[int], banned: frozenset[int], cap: int) -> bool:
        unhit = [s for s in minimal if not (s & required)]
        found = [False]

        def dec(chosen_n: int, banned_now: frozenset[int], unhit_now: list[frozenset[int]]) -> None:
            if found[0] or budget_box.left <= 0:
                return
            nodes_box[0] += 1
            budget_box.spend()
            if not unhit_now:
                found[0] = True
                return
            if chosen_n + lower_bound(unhit_now) > cap:
                return
            pick = min(unhit_now, key=lambda s: (len(s), sorted(s)))
            options = sorted(pick - banned_now)
            newly = set()
            for e in options:
                nb = banned_now | newly
                if any(s <= nb for s in unhit_now):
                    break
                dec(chosen_n + 1, frozenset(nb), [s for s in unhit_now if e not in s])
                if found[0]:
                    return
                newly.add(e)

        dec(len(required), banned, unhit)
        return found[0]

    chosen: set[int] = set()
    banned: set[int] = set()
    for i in range(len(edge_list)):
        if len(chosen) == opt_size:
            break
        if budget_box.left <= 0:
            deleted = tuple(edge_list[j] for j in best[0])
            return _verified_report(g, f, deleted, STATUS_OPTIMAL, nodes_box[0], t0)
        if feasible(frozenset(chosen | {i}), frozenset(banned), opt_size):
            chosen.add(i)
        else:
            banned.add(i)
    deleted = tuple(edge_list[i] for i in sorted(chosen))
    return _verified_report(g, f, deleted, STATUS_OPTIMAL, nodes_box[0], t0)


def _lazy_branch_and_bound(
    g: OrderedGraph, f: OrderedGraph, budget: int, nodes_box: list[int]
) -> tuple[tuple[Edge, ...], str]:
    """Hitting-set search that discovers violated copies one at a time."""
    budget_box = _Budget(budget)
    best: list[Optional[tuple[Edge, ...]]] = [None]

    def first_copy(masked: OrderedGraph) -> Optional[frozenset[Edge]]:
        maps, _ = _embed_search(masked.n, masked.up_adj, f, limit=1)
        if not maps:
            return None
        return frozenset(Embedding(f.n, maps[0]).edge_image(f))

    def packing_bound(masked: OrderedGraph) -> int:
        lb = 0
        work = masked
        while True:
            copy = first_copy(work)
            if copy is None:
                return lb
            lb += 1
            work = work.without_edges(copy)

    def search(deleted: list[Edge], banned: frozenset[Edge]) -> None:
        if budget_box.left <= 0:
            return
        nodes_box[0] += 1
        budget_box.spend()
        masked = g.without_edges(deleted)
        copy = first_copy(masked)
        if copy is None:
            cand = tuple(sorted(deleted))
            if best[0] is None or len(cand) < len(best[0]):
                best[0] = cand
            return
        if best[0] is not None and len(deleted) + packing_bound(masked) >= len(best[0]):
            return
        newly: set[Edge] = set()
        for e in sorted(copy - banned):
            nb = banned | newly
            if copy <= nb:
                break
            deleted.append(e)
            search(deleted, frozenset(nb))
            deleted.pop()
            newly.add(e)

    search([], frozenset())
    if best[0] is None:
        return tuple(g.sorted_edges), STATUS_BUDGET
    status = STATUS_BUDGET if budget_box.left <= 0 else STATUS_OPTIMAL
    return best[0], status


# ---------------------------------------------------------------------------
# heuristics


def max_free_greedy(
    g: OrderedGraph,
    f: OrderedGraph,
    policy: str = "given",
    seed: int = 0,
) -> SolveReport:
    """Insert edges one at a time, keeping the partial subgraph pattern-free.

    Policies order the insertion attempts: 'given' (lexicographic), 'random'
    (seeded shuffle), 'degree' (ascending endpoint-degree sum).  The result
    is maximal but in general not maximum.
    """
    if f.e == 0:
        raise ValueError("pattern must have at least one edge")
    t0 = time.perf_counter()
    edges = list(g.sorted_edges)
    if policy == "random":
        rng = np.random.default_rng(np.random.SeedSequence([seed, 0]))
        edges = [edges[i] for i in rng.permutation(len(edges))]
    elif policy == "degree":
        edges.sort(key=lambda e: (g.degree(e[0]) + g.degree(e[1]), e))
    elif policy != "given":
        raise ValueError(f"unknown policy {policy!r}")

    trio = matching3.compile_pattern(f.n, f.sorted_edges)
    kept: set[Edge] = set()
    nodes = 0
    if trio is not None:
        kept_l: list[int] = []
        kept_r: list[int] = []
        for u, v in edges:
            nodes += 1
            ls = np.asarray(kept_l, dtype=np.int64)
            rs = np.asarray(kept_r, dtype=np.int64)
            if not matching3.anchored_contains(ls, rs, (u, v), trio):
                kept.add((u, v))
                kept_l.append(u)
                kept_r.append(v)
    else:
        host_up: list[list[int]] = [[] for _ in range(g.n + 1)]
        pattern_edges = sorted(f.edges)
        for u, v in edges:
            insort(host_up[u], v)
            hit = False
            for p, q in pattern_edges:
                maps, nn = _embed_search(g.n, host_up, f, pinned={p: u, q: v}, limit=1)
                nodes += nn
                if maps:
                    hit = True
                    break
            if hit:
                host_up[u].remove(v)
            else:
                kept.add((u, v))
    deleted = tuple(sorted(set(g.sorted_edges) - kept))
    rep = _verified_report(
        g, f, deleted, STATUS_HEURISTIC, nodes, t0,
        seed=seed if policy == "random" else None,
    )
    return rep


def bipartite_half(g: OrderedGraph, seed: Optional[int] = None) -> SolveReport:
    """Bipartition-induced subgraph keeping at least half the edges.

    Starts from the vertex-parity partition, then flips any vertex with more
    neighbors on its own side; each flip grows the cut, so the loop stops at
    a local optimum where every vertex has cut-degree >= degree/2, giving
    kept >= ceil(e/2).  The result has no odd cycles.
    """
    t0 = time.perf_counter()
    side = [v & 1 for v in range(g.n + 1)]
    order = list(range(1, g.n + 1))
    if seed is not None:
        rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
        order = [order[i] for i in rng.permutation(len(order))]
    neighbors = [(*g.up_adj[v], *g.down_adj[v]) for v in range(g.n + 1)]
    flips = 0
    improved = True
    while improved:
        improved = False
        for v in order:
            nbrs = neighbors[v]
            if not nbrs:
                continue
            cut = sum(1 for u in nbrs if side[u] != side[v])
            if 2 * cut < len(nbrs):
                side[v] ^= 1
                flips += 1
                improved = True
    deleted = tuple(e for e in g.sorted_edges if side[e[0]] == side[e[1]])
    return SolveReport(
        optimum=g.e - len(deleted),
        deleted=deleted,
        status=STATUS_HEURISTIC,
        nodes_explored=flips,
        wall_time=time.perf_counter() - t0,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# witness ratios


@dataclass(frozen=True)
class WitnessRatio:
    """Best pattern-free fraction of one witness host; an upper bound on the
    relative density of the pattern when certified."""

    index: int
    ratio: Fraction
    certified: bool
    optimum: int
    edges: int


def rho_upper_from_witness(
    family: Callable[[int], OrderedGraph],
    f: OrderedGraph,
    indices: Iterable[int],
    budget: int = DEFAULT_NODE_BUDGET,
) -> list[WitnessRatio]:
    """Exact pattern-free fractions over a family of witness hosts.

    Each certified ratio bounds the relative density of f from above; the
    running minimum over the sequence is the best certified bound.
    """
    out: list[WitnessRatio] = []
    for idx in indices:
        host = family(idx)
        if host.e == 0:
            raise ValueError(f"witness host at index {idx} has no edges")
        rep = min_deletion_exact(host, f, budget=budget)
        out.append(
            WitnessRatio(
                index=idx,
                ratio=Fraction(rep.optimum, host.e),
                certified=rep.status == STATUS_OPTIMAL,
                optimum=rep.optimum,
                edges=host.e,
            )
        )
    return out


def best_certified_ratio(results: Iterable[WitnessRatio]) -> Optional[Fraction]:
    certified = [r.ratio for r in results if r.certified]
    return min(certified) if certified else None
