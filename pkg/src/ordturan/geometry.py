"""Point matchings on (0,2), interval calculus, and quasirandom hosts.

A point matching is a finite set of segments (x, y) with 0 < x < y < 2 and
all endpoint coordinates distinct.  A quasirandom layer ``G(n, eps)`` draws n
segments with left ends in (0,1) and right ends in (1,2) and is certified by
a discrepancy check over a uniform grid.  The recursive host ``G_d`` packs
two half-scale copies of ``G_{d-1}`` into (0,1) and (1,2) and adds a fresh
full-width layer of ``2^{d-1} n`` segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .catalog import build_pattern
from .ordgraph import Edge, OrderedGraph, contains

G_D_MAX = 8
DEFAULT_RESAMPLE_BUDGET = 100

#: three-segment pattern whose copies the claim checker must not see:
#: two interleaved crossings with the outer pair disjoint
CLAIM_PATTERN = build_pattern([(1, 3), (2, 5), (4, 6)])


class ResampleBudgetError(RuntimeError):
    """Raised when no draw passes certification within the resample budget."""


# ---------------------------------------------------------------------------
# intervals


class Interval(NamedTuple):
    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    @property
    def empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    @property
    def length(self) -> float:
        return max(self.hi - self.lo, 0.0)

    def contains(self, x: float) -> bool:
        if self.lo < x < self.hi:
            return True
        if x == self.lo and self.lo_closed:
            return True
        return x == self.hi and self.hi_closed


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint, non-adjacent intervals inside (0, 2).

    Construct through :func:`interval_union`, which normalizes arbitrary
    input.  Lengths ignore endpoint closedness; membership does not.
    """

    intervals: tuple[Interval, ...] = ()

    @property
    def count(self) -> int:
        return len(self.intervals)

    @property
    def total_length(self) -> float:
        return float(sum(iv.length for iv in self.intervals))

    @property
    def empty(self) -> bool:
        return not self.intervals

    def contains(self, x: float) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    def contains_array(self, xs: np.ndarray) -> np.ndarray:
        mask = np.zeros(len(xs), dtype=bool)
        for lo, hi, lc, hc in self.intervals:
            m = (xs > lo) & (xs < hi)
            if lc:
                m |= xs == lo
            if hc:
                m |= xs == hi
            mask |= m
        return mask

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return interval_union([*self.intervals, *other.intervals])

    def complement_within(self, lo: float, hi: float) -> "IntervalUnion":
        """Complement inside the open container (lo, hi).

        Every interval of self must lie inside [lo, hi].  A boundary point of
        self belongs to the complement exactly when it is not covered.
        """
        pieces: list[Interval] = []
        cursor = lo
        cursor_closed = False
        for iv in self.intervals:
            if iv.lo < lo or iv.hi > hi:
                raise ValueError("interval union exceeds the container")
            pieces.append(Interval(cursor, iv.lo, cursor_closed, not iv.lo_closed))
            cursor = iv.hi
            cursor_closed = not iv.hi_closed
        pieces.append(Interval(cursor, hi, cursor_closed, False))
        return interval_union(pieces)


EMPTY_UNION = IntervalUnion()


def interval_union(intervals: Iterable[Interval | tuple]) -> IntervalUnion:
    """Normalize intervals: drop empties, sort, merge overlaps and touches."""
    items = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals]
    items = [iv for iv in items if not iv.empty]
    if not items:
        return EMPTY_UNION
    items.sort(key=lambda iv: (iv.lo, not iv.lo_closed, iv.hi))
    merged = [items[0]]
    for nxt in items[1:]:
        cur = merged[-1]
        touches = nxt.lo == cur.hi and (cur.hi_closed or nxt.lo_closed)
        if nxt.lo < cur.hi or touches:
            lo_closed = cur.lo_closed or (nxt.lo == cur.lo and nxt.lo_closed)
            if nxt.hi > cur.hi:
                hi, hi_closed = nxt.hi, nxt.hi_closed
            elif nxt.hi == cur.hi:
                hi, hi_closed = cur.hi, cur.hi_closed or nxt.hi_closed
            else:
                hi, hi_closed = cur.hi, cur.hi_closed
            merged[-1] = Interval(cur.lo, hi, lo_closed, hi_closed)
        else:
            merged.append(nxt)
    return IntervalUnion(tuple(merged))


def interval_hull(points: Sequence[float]) -> Interval:
    """Closed interval [min, max] of a nonempty point set."""
    if len(points) == 0:
        raise ValueError("hull of an empty point set")
    return Interval(min(points), max(points), True, True)


def points_in(iv: Interval, points: Sequence[float]) -> tuple[float, ...]:
    return tuple(p for p in points if iv.contains(p))


# ---------------------------------------------------------------------------
# point matchings


class PointEdge(NamedTuple):
    x: float
    y: float
    layer: str = ""


@dataclass(frozen=True)
class MatchingMeta:
    d: Optional[int] = None
    n: Optional[int] = None
    eps: Optional[float] = None
    seed: Optional[int] = None


@dataclass(frozen=True)
class PointMatching:
    """Matching whose vertices are distinct real points in (0, 2)."""

    edges: tuple[PointEdge, ...]
    meta: Optional[MatchingMeta] = None

    def __post_init__(self) -> None:
        seen: set[float] = set()
        for e in self.edges:
            if not (0.0 < e.x < e.y < 2.0):
                raise ValueError(f"edge ({e.x}, {e.y}) must satisfy 0 < x < y < 2")
            if e.x in seen or e.y in seen or e.x == e.y:
                raise ValueError(f"duplicate endpoint coordinate in edge ({e.x}, {e.y})")
            seen.add(e.x)
            seen.add(e.y)

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def xs(self) -> np.ndarray:
        return np.array([e.x for e in self.edges], dtype=float)

    @cached_property
    def ys(self) -> np.ndarray:
        return np.array([e.y for e in self.edges], dtype=float)

    def subgraph(self, indices: Iterable[int]) -> "PointMatching":
        idx = sorted(set(indices))
        return PointMatching(tuple(self.edges[i] for i in idx), self.meta)


def endpoints_left(gm: PointMatching) -> tuple[float, ...]:
    """Sorted left endpoints L(H)."""
    return tuple(sorted(e.x for e in gm.edges))


def endpoints_right(gm: PointMatching) -> tuple[float, ...]:
    """Sorted right endpoints R(H)."""
    return tuple(sorted(e.y for e in gm.edges))


def covered_set(gm: PointMatching) -> IntervalUnion:
    """Union of the open spans (x, y) of the edges, merged and sorted."""
    if not gm.edges:
        return EMPTY_UNION
    order = np.argsort(gm.xs)
    ls = gm.xs[order]
    rs = gm.ys[order]
    run = np.maximum.accumulate(rs)
    starts = np.empty(len(ls), dtype=bool)
    starts[0] = True
    starts[1:] = ls[1:] >= run[:-1]
    idx = np.flatnonzero(starts)
    his = np.append(run[idx[1:] - 1], run[-1])
    return interval_union(
        Interval(float(ls[i]), float(h)) for i, h in zip(idx, his)
    )


def count_edges_between(gm: PointMatching, left: IntervalUnion, right: IntervalUnion) -> int:
    """Number of edges (x, y) with x in `left` and y in `right`."""
    if gm.e == 0 or left.empty or right.empty:
        return 0
    return int((left.contains_array(gm.xs) & right.contains_array(gm.ys)).sum())


def to_ordered_graph(gm: PointMatching) -> OrderedGraph:
    """Rank all endpoints 1..2m by coordinate and emit the matching on ranks."""
    coords = sorted([e.x for e in gm.edges] + [e.y for e in gm.edges])
    rank = {c: i + 1 for i, c in enumerate(coords)}
    if len(rank) != 2 * gm.e:
        raise ValueError("coordinate collision; endpoints are not distinct")
    return OrderedGraph(
        2 * gm.e, frozenset((rank[e.x], rank[e.y]) for e in gm.edges)
    )


def subgraph_from_ordered_edges(gm: PointMatching, kept: Iterable[Edge]) -> PointMatching:
    """Select the point edges whose rank image lies in `kept`."""
    coords = sorted([e.x for e in gm.edges] + [e.y for e in gm.edges])
    rank = {c: i + 1 for i, c in enumerate(coords)}
    want = {tuple(sorted(e)) for e in kept}
    picked = tuple(e for e in gm.edges if (rank[e.x], rank[e.y]) in want)
    if len(picked) != len(want):
        raise ValueError("some ordered edges have no preimage in the matching")
    return PointMatching(picked, gm.meta)


def decompose_blocks(gm: PointMatching) -> tuple[PointMatching, PointMatching, PointMatching]:
    """Split edges by position relative to the midpoint 1: (left, right, straddling)."""
    left = tuple(e for e in gm.edges if e.y < 1.0)
    right = tuple(e for e in gm.edges if e.x > 1.0)
    across = tuple(e for e in gm.edges if e.x < 1.0 < e.y)
    return (
        PointMatching(left, gm.meta),
        PointMatching(right, gm.meta),
        PointMatching(across, gm.meta),
    )


# ---------------------------------------------------------------------------
# generation


def _rng_for(seed: int, attempt: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    return np.random.default_rng(np.random.SeedSequence([seed, attempt]))


def _child_seed(seed: int, tag: int) -> int:
    return int(np.random.SeedSequence([seed, 2 + tag]).generate_state(1, np.uint64)[0])


def _draw_layer(m: int, rng: np.random.Generator) -> list[PointEdge]:
    """m raw segments with x ~ U(0,1), y ~ U(1,2); redraw until all endpoint
    coordinates are distinct and strictly inside the open parts."""
    xs = rng.random(m)
    ys = 1.0 + rng.random(m)
    while True:
        bad = set(np.flatnonzero((xs <= 0.0) | (ys <= 1.0)))
        seen: dict[float, int] = {}
        for i in range(m):
            for v in (xs[i], ys[i]):
                if v in seen and seen[v] != i:
                    bad.add(i)
                else:
                    seen[v] = i
        if not bad:
            break
        idx = sorted(bad)
        xs[idx] = rng.random(len(idx))
        ys[idx] = 1.0 + rng.random(len(idx))
    return [PointEdge(float(x), float(y), "") for x, y in zip(xs, ys)]


def gen_quasirandom(
    n: int,
    eps: float,
    seed: int,
    resample_budget: int = DEFAULT_RESAMPLE_BUDGET,
) -> PointMatching:
    """Draw layers of n segments between (0,1) and (1,2) until one passes
    :func:`certify_quasirandom`; deterministic given the seed.

    Raises :class:`ResampleBudgetError` if the budget runs out, which signals
    that eps is too small for this n.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    for attempt in range(resample_budget):
        edges = _draw_layer(n, _rng_for(seed, attempt))
        gm = PointMatching(tuple(edges), MatchingMeta(d=1, n=n, eps=eps, seed=seed))
        if certify_quasirandom(gm, eps).passed:
            return gm
    raise ResampleBudgetError(
        f"no draw passed certification in {resample_budget} attempts "
        f"(n={n}, eps={eps}); eps is too small for this n"
    )


@dataclass(frozen=True)
class CertReport:
    passed: bool
    n: int
    t: int
    bound: float
    max_deviation: float
    witness_left: tuple[float, float]
    witness_right: tuple[float, float]


def certify_quasirandom(gm: PointMatching, eps: float) -> CertReport:
    """Discrepancy certificate on the t x t grid, t = ceil(50/eps).

    Checks |e(I,J) - |I||J|n| <= eps*n/10 for every pair (I, J) of unions of
    consecutive grid cells on the two sides; the worst pair is found exactly
    as a maximum-magnitude rectangle sum over the centered cell counts, via
    prefix sums.  Edges must run across the midpoint (x < 1 < y).
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    n = gm.e
    t = math.ceil(50.0 / eps)
    if n == 0:
        return CertReport(True, 0, t, 0.0, 0.0, (0.0, 1.0), (1.0, 2.0))
    xs, ys = gm.xs, gm.ys
    if not ((xs < 1.0).all() and (ys > 1.0).all()):
        raise ValueError("matching is not bipartite across the midpoint 1")

    ix = np.clip((xs * t).astype(np.int64), 0, t - 1)
    iy = np.clip(((ys - 1.0) * t).astype(np.int64), 0, t - 1)
    cells = np.bincount(ix * t + iy, minlength=t * t).reshape(t, t).astype(float)
    dev = cells - n / (t * t)

    prefix = np.zeros((t + 1, t))
    np.cumsum(dev, axis=0, out=prefix[1:])

    best = -1.0
    best_at = (0, 0, 0, True)  # (i1, i2, j_end, positive?)
    for i2 in range(t):
        rows = prefix[i2 + 1] - prefix[: i2 + 1]  # row-band sums, i1 = 0..i2
        cs = np.zeros((i2 + 1, t + 1))
        np.cumsum(rows, axis=1, out=cs[:, 1:])
        runmin = np.minimum.accumulate(cs, axis=1)
        runmax = np.maximum.accumulate(cs, axis=1)
        pos = cs[:, 1:] - runmin[:, :-1]
        neg = runmax[:, :-1] - cs[:, 1:]
        for grid, is_pos in ((pos, True), (neg, False)):
            m = float(grid.max())
            if m > best:
                i1, j_end = np.unravel_index(int(grid.argmax()), grid.shape)
                best = m
                best_at = (int(i1), i2, int(j_end), is_pos)

    i1, i2, j_end, is_pos = best_at
    row = np.zeros(t + 1)
    np.cumsum(prefix[i2 + 1] - prefix[i1], out=row[1:])
    j1 = int(np.argmin(row[: j_end + 1]) if is_pos else np.argmax(row[: j_end + 1]))
    bound = eps * n / 10.0
    return CertReport(
        passed=bool(best <= bound),
        n=n,
        t=t,
        bound=bound,
        max_deviation=best,
        witness_left=(i1 / t, (i2 + 1) / t),
        witness_right=(1.0 + j1 / t, 1.0 + (j_end + 1) / t),
    )


def _free_coord(v: float, used: set[float], lo: float, hi: float) -> float:
    cand = v
    while cand in used:
        nxt = math.nextafter(cand, hi)
        if not (lo < nxt < hi) or nxt == cand:
            break
        cand = nxt
    while cand in used:
        cand = math.nextafter(cand, lo)
        if not (lo < cand < hi):
            raise ValueError("cannot resolve coordinate collision")
    return cand


def _dedupe(edges: list[PointEdge]) -> list[PointEdge]:
    """Nudge coordinates by ulps to restore global distinctness without
    crossing the midpoint or the partner coordinate (collisions across
    rescaled blocks have probability zero but must not crash)."""
    vals = [c for e in edges for c in (e.x, e.y)]
    if len(set(vals)) == len(vals):
        return edges
    used: set[float] = set()
    out: list[PointEdge] = []
    for e in edges:
        x_hi = min(e.y, 1.0) if e.x < 1.0 else e.y
        x = _free_coord(e.x, used, 0.0 if e.x < 1.0 else 1.0, x_hi)
        used.add(x)
        y_lo = max(x, 1.0) if e.y > 1.0 else x
        y = _free_coord(e.y, used, y_lo, 2.0 if e.y > 1.0 else 1.0)
        used.add(y)
        out.append(PointEdge(x, y, e.layer))
    return out


def build_G_d(
    d: int,
    n: int,
    eps: float,
    seed: int,
    certify_layers: bool = False,
    resample_budget: int = DEFAULT_RESAMPLE_BUDGET,
) -> PointMatching:
    """Recursive host with d*2^{d-1}*n edges; guarded to d <= 8.

    Level 1 is a single layer of n segments; level d rescales level d-1 into
    (0,1) and again into (1,2) and adds a fresh layer of 2^{d-1}*n segments.
    Edges carry a block path tag ('' for the top layer, then 'L'/'R'
    prefixes).  With ``certify_layers`` every layer must pass certification,
    which needs eps^2*n large; the default draws raw layers, as the grid
    certificate is unattainable at small n.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if d > G_D_MAX:
        raise ValueError(f"size guard: d <= {G_D_MAX}, got {d}")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")

    def layer(m: int, layer_seed: int) -> list[PointEdge]:
        if certify_layers:
            return list(gen_quasirandom(m, eps, layer_seed, resample_budget).edges)
        return _draw_layer(m, _rng_for(layer_seed, 0))

    def rec(level: int, level_seed: int) -> list[PointEdge]:
        if level == 1:
            return layer(n, level_seed)
        sub = rec(level - 1, _child_seed(level_seed, 0))
        top = layer(2 ** (level - 1) * n, _child_seed(level_seed, 1))
        out = [PointEdge(e.x / 2, e.y / 2, "L" + e.layer) for e in sub]
        out += [PointEdge(1 + e.x / 2, 1 + e.y / 2, "R" + e.layer) for e in sub]
        out += top
        return out

    edges = _dedupe(rec(d, seed))
    return PointMatching(tuple(edges), MatchingMeta(d=d, n=n, eps=eps, seed=seed))


# ---------------------------------------------------------------------------
# coverage bound and claim checking


def f_d(d: int, t: float) -> float:
    """Piecewise coverage bound: 2^{d-1} t^2 up to the knee 1/2^{d-1}, then
    2t - 1/2^{d-1}; convex and increasing on [0, 1]."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [0, 1], got {t}")
    knee = 1.0 / 2 ** (d - 1)
    if t <= knee:
        return 2 ** (d - 1) * t * t
    return 2.0 * t - knee


@dataclass(frozen=True)
class ClaimReport:
    passed: bool
    edges: int
    bound: float
    slack: float
    t: float
    covered_length: float
    interval_count: int


def check_claim(gm: PointMatching, d: int, n: int, eps: float) -> ClaimReport:
    """Check the covered-length edge bound for a crossing-pattern-free
    subgraph of a level-d host:

        e(H) <= f_d(t) * 2^{d-1} * n + 10^d * eps * n,  t = |C(H)| / 2.

    Raises ValueError when the subgraph contains :data:`CLAIM_PATTERN`, since
    then the hypothesis of the bound fails.
    """
    if gm.e > 0 and contains(to_ordered_graph(gm), CLAIM_PATTERN):
        raise ValueError("subgraph contains the forbidden crossing pattern")
    cov = covered_set(gm)
    t = cov.total_length / 2.0
    bound = f_d(d, t) * 2 ** (d - 1) * n + 10**d * eps * n
    slack = bound - gm.e
    return ClaimReport(
        passed=gm.e <= bound,
        edges=gm.e,
        bound=bound,
        slack=slack,
        t=t,
        covered_length=cov.total_length,
        interval_count=cov.count,
    )


# ---------------------------------------------------------------------------
# file format: '#'-prefixed header lines, then one edge per line as
# "x y layer" with 17-significant-digit coordinates and '-' for no tag


def dumps_matching(gm: PointMatching) -> str:
    lines = ["# point-matching v1"]
    meta = gm.meta
    if meta is not None:
        fields = []
        for key in ("d", "n", "eps", "seed"):
            val = getattr(meta, key)
            if val is not None:
                fields.append(f"{key}={_fmt(val)}")
        if fields:
            lines.append("# " + " ".join(fields))
    for e in gm.edges:
        lines.append(f"{_fmt(e.x)} {_fmt(e.y)} {e.layer or '-'}")
    return "\n".join(lines) + "\n"


def loads_matching(text: str) -> PointMatching:
    meta_fields: dict[str, float] = {}
    edges: list[PointEdge] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" in token:
                    key, val = token.split("=", 1)
                    meta_fields[key] = float(val)
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"malformed edge line: {raw!r}")
        layer = "" if len(parts) == 2 or parts[2] == "-" else parts[2]
        edges.append(PointEdge(float(parts[0]), float(parts[1]), layer))
    meta = None
    if meta_fields:
        meta = MatchingMeta(
            d=int(meta_fields["d"]) if "d" in meta_fields else None,
            n=int(meta_fields["n"]) if "n" in meta_fields else None,
            eps=meta_fields.get("eps"),
            seed=int(meta_fields["seed"]) if "seed" in meta_fields else None,
        )
    return PointMatching(tuple(edges), meta)


def save_matching(gm: PointMatching, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_matching(gm))


def load_matching(path: str) -> PointMatching:
    with open(path) as fh:
        return loads_matching(fh.read())


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)
