"""Fast copy detection for patterns that are spanning three-edge matchings.

A copy of such a pattern in any host is exactly a triple of host edges whose
six endpoints are distinct and realize the pattern's endpoint order.  For
three pairwise vertex-disjoint segments the full order of the six endpoints
is determined by the three pairwise segment relations (before / cross /
nest), so copy detection reduces to vectorized relation masks instead of a
backtracking search.  Shared endpoints fail the strict inequalities, so
non-disjoint triples never match.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

BEFORE, CROSS, NEST = 0, 1, 2


@dataclass(frozen=True)
class CompiledTrio:
    """Pairwise relations of the pattern's segments, sorted by left endpoint."""

    rels: tuple[int, int, int]  # (rel01, rel02, rel12)

    def rel(self, i: int, j: int) -> int:
        return self.rels[{(0, 1): 0, (0, 2): 1, (1, 2): 2}[(i, j)]]


def _pair_rel(s: tuple[int, int], t: tuple[int, int]) -> int:
    # s strictly left of t (s[0] < t[0])
    if s[1] < t[0]:
        return BEFORE
    if s[1] < t[1]:
        return CROSS
    return NEST


def compile_pattern(n: int, edges: Sequence[tuple[int, int]]) -> Optional[CompiledTrio]:
    """Compile a pattern into segment relations, or None when out of scope
    (scope: exactly three edges covering vertices 1..6 once each)."""
    if n != 6 or len(edges) != 3:
        return None
    covered = sorted(v for e in edges for v in e)
    if covered != [1, 2, 3, 4, 5, 6]:
        return None
    segs = sorted(edges)
    return CompiledTrio(
        (
            _pair_rel(segs[0], segs[1]),
            _pair_rel(segs[0], segs[2]),
            _pair_rel(segs[1], segs[2]),
        )
    )


def _mask_with_anchor(
    ls: np.ndarray, rs: np.ndarray, e: tuple, rel: int, anchor_left: bool
) -> np.ndarray:
    """Edges standing in the given relation to the anchor segment e."""
    el, er = e
    if anchor_left:  # rel(e, other)
        if rel == BEFORE:
            return ls > er
        if rel == CROSS:
            return (ls > el) & (ls < er) & (rs > er)
        return (ls > el) & (rs < er)
    # rel(other, e)
    if rel == BEFORE:
        return rs < el
    if rel == CROSS:
        return (ls < el) & (rs > el) & (rs < er)
    return (ls < el) & (rs > er)


def _exists_pair(
    la: np.ndarray, ra: np.ndarray, lc: np.ndarray, rc: np.ndarray, rel: int
) -> bool:
    """Is there a pair (a, c), a from the first family playing the left
    segment, in the given relation?"""
    if len(la) == 0 or len(lc) == 0:
        return False
    if rel == BEFORE:
        return bool(ra.min() < lc.max())
    left = la[:, None] < lc[None, :]
    if rel == CROSS:
        hit = left & (lc[None, :] < ra[:, None]) & (ra[:, None] < rc[None, :])
    else:
        hit = left & (rc[None, :] < ra[:, None])
    return bool(hit.any())


def anchored_contains(
    ls: np.ndarray, rs: np.ndarray, e: tuple, trio: CompiledTrio
) -> bool:
    """Does some triple using segment e (in any role) realize the pattern?

    (ls, rs) hold the other candidate segments.
    """
    for k in range(3):
        i, j = [r for r in range(3) if r != k]
        mi = _mask_with_anchor(ls, rs, e, trio.rel(*sorted((i, k))), anchor_left=k < i)
        if not mi.any():
            continue
        mj = _mask_with_anchor(ls, rs, e, trio.rel(*sorted((j, k))), anchor_left=k < j)
        if not mj.any():
            continue
        if _exists_pair(ls[mi], rs[mi], ls[mj], rs[mj], trio.rel(i, j)):
            return True
    return False


def full_contains(ls: np.ndarray, rs: np.ndarray, trio: CompiledTrio) -> bool:
    """Does any triple of the given segments realize the pattern?"""
    m = len(ls)
    if m < 3:
        return False
    # pivot on the role whose removal leaves a 'before' pair when possible;
    # that pair test is O(1) on aggregates instead of a quadratic mask
    pivot = 1
    for k in range(3):
        i, j = [r for r in range(3) if r != k]
        if trio.rel(i, j) == BEFORE:
            pivot = k
            break
    i, j = [r for r in range(3) if r != pivot]
    for idx in range(m):
        e = (ls[idx], rs[idx])
        others = np.arange(m) != idx
        lo, ro = ls[others], rs[others]
        mi = _mask_with_anchor(lo, ro, e, trio.rel(*sorted((i, pivot))), anchor_left=pivot < i)
        if not mi.any():
            continue
        mj = _mask_with_anchor(lo, ro, e, trio.rel(*sorted((j, pivot))), anchor_left=pivot < j)
        if not mj.any():
            continue
        if _exists_pair(lo[mi], ro[mi], lo[mj], ro[mj], trio.rel(i, j)):
            return True
    return False


def segments_of(edges: Sequence[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    if not edges:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    arr = np.asarray(edges, dtype=np.int64)
    return arr[:, 0], arr[:, 1]
