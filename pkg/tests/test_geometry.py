import math

import numpy as np
import pytest

from ordturan.catalog import build_pattern
from ordturan.geometry import (
    CLAIM_PATTERN,
    Interval,
    IntervalUnion,
    MatchingMeta,
    PointEdge,
    PointMatching,
    ResampleBudgetError,
    build_G_d,
    certify_quasirandom,
    check_claim,
    count_edges_between,
    covered_set,
    decompose_blocks,
    dumps_matching,
    endpoints_left,
    endpoints_right,
    f_d,
    gen_quasirandom,
    interval_hull,
    interval_union,
    loads_matching,
    points_in,
    subgraph_from_ordered_edges,
    to_ordered_graph,
)
from ordturan.ordgraph import contains


def unit(lo, hi):
    return interval_union([Interval(lo, hi)])


def diagonal_matching(n):
    return PointMatching(
        tuple(PointEdge((i - 0.5) / n, 1 + (i - 0.5) / n) for i in range(1, n + 1))
    )


class TestIntervalUnion:
    def test_merge_overlaps(self):
        iu = interval_union([Interval(0.2, 0.5), Interval(0.4, 0.9), Interval(1.2, 1.3)])
        assert iu.count == 2
        assert iu.total_length == pytest.approx(0.8)

    def test_open_intervals_do_not_touch(self):
        iu = interval_union([Interval(0.1, 0.2), Interval(0.2, 0.3)])
        assert iu.count == 2
        assert not iu.contains(0.2)

    def test_closed_endpoint_merges(self):
        iu = interval_union([Interval(0.1, 0.2, False, True), Interval(0.2, 0.3)])
        assert iu.count == 1

    def test_membership_flags(self):
        iu = interval_union([Interval(0.1, 0.2, True, False)])
        assert iu.contains(0.1) and not iu.contains(0.2)

    def test_degenerate_point(self):
        iu = interval_union([Interval(0.3, 0.3, True, True)])
        assert iu.count == 1 and iu.total_length == 0.0 and iu.contains(0.3)
        assert interval_union([Interval(0.3, 0.3)]).empty

    def test_complement(self):
        cov = interval_union([Interval(0.2, 0.5)])
        comp = cov.complement_within(0.0, 1.0)
        assert [iv[:2] for iv in comp.intervals] == [(0.0, 0.2), (0.5, 1.0)]
        # boundary points of an open interval belong to the complement
        assert comp.contains(0.2) and comp.contains(0.5)
        assert not comp.contains(0.3)

    def test_complement_of_empty(self):
        comp = IntervalUnion().complement_within(0.0, 1.0)
        assert comp.count == 1 and comp.total_length == pytest.approx(1.0)

    def test_hull(self):
        assert interval_hull([0.3])[:2] == (0.3, 0.3)
        assert interval_hull([0.2, 0.5, 0.4])[:2] == (0.2, 0.5)
        with pytest.raises(ValueError):
            interval_hull([])

    def test_points_in(self):
        iv = Interval(0.2, 0.5, True, False)
        assert points_in(iv, (0.1, 0.2, 0.3, 0.5)) == (0.2, 0.3)


class TestPointMatching:
    def test_validation(self):
        with pytest.raises(ValueError):
            PointMatching((PointEdge(0.5, 0.2),))
        with pytest.raises(ValueError):
            PointMatching((PointEdge(0.0, 1.0),))
        with pytest.raises(ValueError):
            PointMatching((PointEdge(0.1, 0.5), PointEdge(0.5, 0.9)))

    def test_endpoints(self):
        pm = PointMatching((PointEdge(0.4, 1.2), PointEdge(0.1, 1.5)))
        assert endpoints_left(pm) == (0.1, 0.4)
        assert endpoints_right(pm) == (1.2, 1.5)


class TestCoveredSet:
    def test_single_edge(self):
        cov = covered_set(PointMatching((PointEdge(0.2, 1.7),)))
        assert cov.count == 1 and cov.total_length == pytest.approx(1.5)

    def test_disjoint_merge(self):
        cov = covered_set(PointMatching((PointEdge(0.1, 0.3), PointEdge(0.5, 0.9))))
        assert cov.count == 2 and cov.total_length == pytest.approx(0.6)

    def test_empty(self):
        assert covered_set(PointMatching(())).empty

    def test_interval_count_bound(self):
        gm = build_G_d(3, 100, 0.2, seed=5)
        rng = np.random.default_rng(17)
        for _ in range(300):
            k = int(rng.integers(1, 40))
            idx = rng.choice(gm.e, size=k, replace=False)
            assert covered_set(gm.subgraph(idx)).count <= 7


class TestCounting:
    def test_empty_sides(self):
        gm = diagonal_matching(10)
        assert count_edges_between(gm, IntervalUnion(), unit(1.0, 2.0)) == 0

    def test_full_bipartition(self):
        gm = diagonal_matching(50)
        assert count_edges_between(gm, unit(0.0, 1.0), unit(1.0, 2.0)) == 50

    def test_additivity(self):
        gm = diagonal_matching(200)
        left_a, left_b = unit(0.0, 0.3), unit(0.3, 0.7)
        right = unit(1.0, 2.0)
        assert (
            count_edges_between(gm, left_a.union(left_b), right)
            == count_edges_between(gm, left_a, right) + count_edges_between(gm, left_b, right)
        )


class TestCertificate:
    def test_random_layer_passes(self):
        gm = gen_quasirandom(30_000, 0.5, seed=3)
        rep = certify_quasirandom(gm, 0.5)
        assert rep.passed and rep.max_deviation <= rep.bound

    def test_diagonal_fails_grid_but_meets_continuous(self):
        # the diagonal matching is per-axis uniform yet far from jointly
        # quasirandom: its worst run-pair deviation is n/4, over the grid
        # bound eps*n/10 while inside the continuous tolerance eps*n
        n = 1000
        gm = diagonal_matching(n)
        rep = certify_quasirandom(gm, 0.5)
        assert not rep.passed
        assert rep.max_deviation == pytest.approx(n / 4, rel=0.05)
        assert rep.max_deviation <= 0.5 * n

    def test_clustered_fails(self):
        rng = np.random.default_rng(0)
        xs = rng.uniform(1e-6, 0.01, 400)
        ys = 1 + rng.uniform(0, 1, 400)
        gm = PointMatching(tuple(PointEdge(float(x), float(y)) for x, y in zip(xs, ys)))
        assert not certify_quasirandom(gm, 0.1).passed

    def test_requires_bipartite(self):
        with pytest.raises(ValueError):
            certify_quasirandom(PointMatching((PointEdge(0.1, 0.2),)), 0.5)

    def test_witness_rectangle_is_real(self):
        rng = np.random.default_rng(1)
        xs = rng.uniform(1e-6, 0.05, 300)
        ys = 1 + rng.uniform(0.9, 1.0 - 1e-9, 300)
        gm = PointMatching(tuple(PointEdge(float(x), float(y)) for x, y in zip(xs, ys)))
        rep = certify_quasirandom(gm, 0.2)
        count = count_edges_between(gm, unit(*rep.witness_left), unit(*rep.witness_right))
        area = (rep.witness_left[1] - rep.witness_left[0]) * (
            rep.witness_right[1] - rep.witness_right[0]
        )
        assert abs(count - area * gm.e) == pytest.approx(rep.max_deviation, abs=1.0)

    def test_resample_budget_error(self):
        with pytest.raises(ResampleBudgetError):
            gen_quasirandom(50, 0.2, seed=0, resample_budget=3)


class TestRecursiveHost:
    def test_edge_counts(self):
        for d in range(1, 6):
            assert build_G_d(d, 10, 0.2, seed=1).e == d * 2 ** (d - 1) * 10

    def test_base_case_equals_certified_layer(self):
        gen = gen_quasirandom(20_000, 0.5, seed=11)
        assert build_G_d(1, 20_000, 0.5, seed=11, certify_layers=True).edges == gen.edges
        # raw level-1 draws coincide whenever the first draw certifies
        assert build_G_d(1, 20_000, 0.5, seed=11).edges == gen.edges

    def test_points_distinct_and_in_range(self):
        gm = build_G_d(4, 25, 0.2, seed=2)
        coords = [c for e in gm.edges for c in (e.x, e.y)]
        assert len(set(coords)) == len(coords)
        assert all(0.0 < c < 2.0 for c in coords)

    def test_layer_tags(self):
        gm = build_G_d(3, 10, 0.2, seed=4)
        tags = {e.layer for e in gm.edges}
        assert tags == {"", "L", "R", "LL", "LR", "RL", "RR"}
        top = [e for e in gm.edges if e.layer == ""]
        assert len(top) == 4 * 10
        assert all(e.x < 1.0 < e.y for e in top)
        left = [e for e in gm.edges if e.layer.startswith("L")]
        assert all(e.y < 1.0 for e in left)

    def test_blocks_by_midpoint(self):
        gm = build_G_d(2, 30, 0.2, seed=6)
        a, b, c = decompose_blocks(gm)
        assert a.e == b.e == 30 and c.e == 60
        assert a.e + b.e + c.e == gm.e

    def test_size_guard(self):
        with pytest.raises(ValueError):
            build_G_d(9, 10, 0.2, seed=0)

    def test_meta_recorded(self):
        gm = build_G_d(2, 10, 0.25, seed=3)
        assert gm.meta == MatchingMeta(d=2, n=10, eps=0.25, seed=3)


class TestOrderedView:
    def test_single_edge(self):
        og = to_ordered_graph(PointMatching((PointEdge(0.3, 1.2),)))
        assert og.n == 2 and og.edges == frozenset({(1, 2)})

    def test_nested_pair(self):
        og = to_ordered_graph(PointMatching((PointEdge(0.1, 1.9), PointEdge(0.5, 0.7))))
        assert og.edges == frozenset({(1, 4), (2, 3)})

    def test_layer_roundtrip(self):
        gm = gen_quasirandom(25_000, 0.5, seed=5)
        og = to_ordered_graph(gm)
        assert og.n == 2 * gm.e and og.e == gm.e

    def test_containment_preserved(self):
        crossing = PointMatching(
            (PointEdge(0.1, 0.4), PointEdge(0.2, 0.7), PointEdge(0.5, 0.9))
        )
        pattern = build_pattern([(1, 3), (2, 5), (4, 6)])
        assert contains(to_ordered_graph(crossing), pattern)
        nested = PointMatching(
            (PointEdge(0.1, 0.9), PointEdge(0.2, 0.8), PointEdge(0.3, 0.7))
        )
        assert not contains(to_ordered_graph(nested), pattern)

    def test_subgraph_selection(self):
        gm = build_G_d(2, 20, 0.2, seed=9)
        og = to_ordered_graph(gm)
        kept = set(list(og.sorted_edges)[::2])
        sub = subgraph_from_ordered_edges(gm, kept)
        assert sub.e == len(kept)
        assert to_ordered_graph(sub).e == len(kept)


class TestBoundFunction:
    def test_quadratic_branch(self):
        assert f_d(1, 0.5) == 0.25

    def test_knee_continuity(self):
        for d in range(1, 6):
            knee = 1.0 / 2 ** (d - 1)
            assert f_d(d, knee) == pytest.approx(knee)

    def test_linear_branch(self):
        assert f_d(3, 1.0) == pytest.approx(1.75)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            f_d(2, -0.1)
        with pytest.raises(ValueError):
            f_d(2, 1.1)

    def test_below_double(self):
        for d in (1, 2, 3, 4):
            for t in np.linspace(0, 1, 101):
                assert f_d(d, float(t)) <= 2 * t + 1e-12


class TestClaim:
    def test_empty_passes(self):
        rep = check_claim(PointMatching(()), 3, 200, 0.2)
        assert rep.passed and rep.t == 0.0

    def test_single_top_edge(self):
        gm = build_G_d(2, 50, 0.2, seed=8)
        idx = next(i for i, e in enumerate(gm.edges) if e.layer == "")
        rep = check_claim(gm.subgraph([idx]), 2, 50, 0.2)
        assert rep.passed and rep.edges == 1

    def test_rejects_pattern_copy(self):
        crossing = PointMatching(
            (PointEdge(0.1, 0.4), PointEdge(0.2, 0.7), PointEdge(0.5, 0.9))
        )
        with pytest.raises(ValueError):
            check_claim(crossing, 1, 3, 0.2)

    def test_claim_pattern_constant(self):
        assert CLAIM_PATTERN == build_pattern([(1, 3), (2, 5), (4, 6)])


class TestMatchingFile:
    def test_roundtrip_with_meta(self):
        gm = build_G_d(2, 15, 0.2, seed=12)
        assert loads_matching(dumps_matching(gm)) == gm

    def test_roundtrip_no_meta(self):
        pm = PointMatching((PointEdge(0.1, 1.5, "L"), PointEdge(0.2, 0.3)))
        back = loads_matching(dumps_matching(pm))
        assert back.edges == pm.edges

    def test_full_precision(self):
        x = 1 / 3
        pm = PointMatching((PointEdge(x, 1 + x),))
        back = loads_matching(dumps_matching(pm))
        assert back.edges[0].x == x and back.edges[0].y == 1 + x

    def test_malformed_line(self):
        with pytest.raises(ValueError):
            loads_matching("0.1\n")
