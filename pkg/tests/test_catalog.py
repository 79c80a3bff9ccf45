import pytest

from ordturan.catalog import (
    build_B,
    build_H_d,
    build_H_stair,
    build_M,
    build_P,
    build_Q,
    build_pattern,
)
from ordturan.ordgraph import chi_interval, contains, ell_monotone

H3_FIGURE = {
    (1, 24), (2, 23), (3, 22), (4, 21), (5, 12), (6, 11),
    (7, 8), (9, 10), (13, 20), (14, 19), (15, 16), (17, 18),
}


class TestPath:
    def test_single_edge(self):
        assert build_P(2).edges == frozenset({(1, 2)})

    def test_five(self):
        p = build_P(5)
        assert p.e == 4 and chi_interval(p) == 5

    def test_nine(self):
        assert ell_monotone(build_P(9)) == 9

    def test_guard(self):
        with pytest.raises(ValueError):
            build_P(1)


class TestChordPath:
    def test_figure_edges(self):
        assert build_Q(2, 2).edges == frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (1, 3)})

    def test_small(self):
        q = build_Q(2, 1)
        assert q.n == 4 and q.e == 4

    def test_edge_count_formula(self):
        for a in range(2, 6):
            for b in range(1, 6):
                assert build_Q(a, b).e == a + b + 1

    def test_interval_chromatic(self):
        for a in range(2, 6):
            for b in range(1, a + 1):
                assert chi_interval(build_Q(a, b)) == a + b + 1

    def test_guards(self):
        with pytest.raises(ValueError):
            build_Q(1, 1)
        with pytest.raises(ValueError):
            build_Q(2, 0)


class TestDoublePath:
    def test_figure_case(self):
        b = build_B(2, 9)
        assert b.e == 12
        assert {(1, 3), (3, 5), (5, 7), (7, 9)} <= b.edges

    def test_three_step(self):
        b = build_B(3, 7)
        assert b.e == 8
        assert {(1, 4), (4, 7)} <= b.edges

    def test_counts_and_span(self):
        for a in (2, 3, 4):
            for ell in (1, 2, 3):
                n = a * ell + 1
                host = build_B(a, n)
                assert host.e == (a + 1) * ell
                assert ell_monotone(host) == n

    def test_divisibility_guard(self):
        with pytest.raises(ValueError):
            build_B(2, 8)
        with pytest.raises(ValueError):
            build_B(1, 5)


class TestMatching:
    def test_single(self):
        assert build_M(1).edges == frozenset({(1, 2)})

    def test_three(self):
        m = build_M(3)
        assert m.edges == frozenset({(1, 2), (3, 4), (5, 6)})
        assert chi_interval(m) == 4

    def test_four(self):
        m = build_M(4)
        assert m.e == 4 and ell_monotone(m) == 2

    def test_pattern_consistency(self):
        for j in range(1, 6):
            pairs = [(2 * i - 1, 2 * i) for i in range(1, j + 1)]
            assert build_M(j) == build_pattern(pairs)


class TestPattern:
    def test_cover_matching(self):
        m = build_pattern([(1, 6), (2, 3), (4, 5)])
        assert m.n == 6 and m.e == 3

    def test_crossing_chain(self):
        m = build_pattern([(1, 3), (2, 5), (4, 6)])
        assert m.n == 6 and m.e == 3
        assert chi_interval(m) == 3

    def test_empty(self):
        empty = build_pattern([])
        assert empty.n == 0 and empty.e == 0

    def test_explicit_n(self):
        assert build_pattern([(1, 2)], n=5).n == 5

    def test_malformed(self):
        with pytest.raises(ValueError):
            build_pattern([(1, 2, 3)])
        with pytest.raises(ValueError):
            build_pattern([(2, 2)])


class TestNestedHost:
    def test_base(self):
        assert build_H_d(1).edges == frozenset({(1, 2)})

    def test_figure(self):
        h3 = build_H_d(3)
        assert h3.n == 24 and set(h3.edges) == H3_FIGURE

    def test_size_formulas(self):
        for d in range(1, 9):
            h = build_H_d(d)
            assert h.e == d * 2 ** (d - 1)
            assert h.n == d * 2**d

    def test_recursive_blocks(self):
        for d in range(2, 6):
            h = build_H_d(d)
            inner = build_H_d(d - 1)
            half = 2 ** (d - 1)
            left = {(u + half, v + half) for u, v in inner.edges}
            right = {(u + half + inner.n, v + half + inner.n) for u, v in inner.edges}
            assert left <= h.edges and right <= h.edges
            outer = {(i, h.n + 1 - i) for i in range(1, half + 1)}
            assert h.edges == left | right | outer

    def test_contains_previous_level(self):
        assert contains(build_H_d(3), build_H_d(2))

    def test_guard(self):
        with pytest.raises(ValueError):
            build_H_d(13)
        with pytest.raises(ValueError):
            build_H_d(0)


class TestStair:
    def test_single_edge(self):
        assert build_H_stair(2).edges == frozenset({(1, 2)})

    def test_odd_vertex_isolated(self):
        # t=3 adds an isolated vertex: (2,3) runs even-to-odd and is excluded
        g = build_H_stair(3)
        assert g.n == 3 and g.edges == frozenset({(1, 2)})

    def test_four(self):
        assert build_H_stair(4).edges == frozenset({(1, 2), (1, 4), (3, 4)})

    def test_monotone_paths_stay_short(self):
        for t in range(2, 11):
            assert ell_monotone(build_H_stair(t)) == 2

    def test_hosts_matchings(self):
        for j in (2, 3, 4):
            assert contains(build_H_stair(2 * j), build_M(j))
