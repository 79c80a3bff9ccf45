import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordturan.catalog import build_B, build_H_d, build_M, build_P, build_Q, build_pattern
from ordturan.ordgraph import (
    Embedding,
    OrderedGraph,
    blowup,
    chi_interval,
    chromatic_number,
    contains,
    dumps_graph,
    ell_monotone,
    enumerate_embeddings,
    graph,
    has_odd_cycle,
    loads_graph,
    plus_I,
)
from oracles import (
    brute_chi_interval,
    brute_chromatic,
    brute_embeddings,
    brute_longest_monotone,
)


@st.composite
def ordered_graphs(draw, max_n=9, max_m=14):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    if pairs:
        edges = draw(st.lists(st.sampled_from(pairs), max_size=max_m))
    else:
        edges = []
    return graph(n, set(edges))


class TestConstruction:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            OrderedGraph(3, frozenset({(1, 4)}))
        with pytest.raises(ValueError):
            OrderedGraph(3, frozenset({(2, 1)}))
        with pytest.raises(ValueError):
            graph(3, [(2, 2)])

    def test_isolated_vertices_allowed(self):
        g = graph(5, [(1, 2)])
        assert g.n == 5 and g.e == 1

    def test_normalizes_pair_order(self):
        assert graph(3, [(3, 1)]).edges == frozenset({(1, 3)})


class TestChiInterval:
    def test_monotone_path(self):
        assert chi_interval(build_P(5)) == 5

    def test_matching(self):
        assert chi_interval(build_M(3)) == 4

    def test_edgeless(self):
        assert chi_interval(OrderedGraph(7, frozenset())) == 1

    def test_chord_path(self):
        assert chi_interval(build_Q(2, 2)) == 5

    @settings(max_examples=150, deadline=None)
    @given(ordered_graphs())
    def test_greedy_matches_exhaustive_partitions(self, g):
        assert chi_interval(g) == brute_chi_interval(g)

    @settings(max_examples=80, deadline=None)
    @given(ordered_graphs(max_n=8))
    def test_at_least_chromatic(self, g):
        assert chi_interval(g) >= chromatic_number(g)


class TestEllMonotone:
    def test_paths(self):
        for k in (2, 5, 9):
            assert ell_monotone(build_P(k)) == k

    def test_matchings(self):
        for j in range(1, 5):
            assert ell_monotone(build_M(j)) == 2

    def test_chord_path_oracle_value(self):
        # frozen from the exhaustive path oracle
        assert ell_monotone(build_Q(2, 3)) == 6
        assert brute_longest_monotone(build_Q(2, 3)) == 6

    @settings(max_examples=120, deadline=None)
    @given(ordered_graphs(max_n=8))
    def test_matches_path_enumeration(self, g):
        assert ell_monotone(g) == brute_longest_monotone(g)


class TestEmbeddings:
    def test_matching_choose(self):
        assert len(enumerate_embeddings(build_M(5), build_M(3))) == 10

    def test_single_edge_identity(self):
        embs = enumerate_embeddings(build_M(1), build_M(1))
        assert [e.phi for e in embs] == [(1, 2)]

    def test_chord_in_double_path(self):
        assert enumerate_embeddings(build_B(2, 9), build_Q(2, 2)) != []

    def test_limit_truncates(self):
        embs = enumerate_embeddings(build_M(5), build_M(3), limit=4)
        assert len(embs) == 4

    def test_lexicographic_order(self):
        phis = [e.phi for e in enumerate_embeddings(build_M(5), build_M(2))]
        assert phis == sorted(phis)

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            enumerate_embeddings(build_M(2), OrderedGraph(0, frozenset()))

    @settings(max_examples=150, deadline=None)
    @given(ordered_graphs(max_n=8), st.data())
    def test_complete_against_subset_scan(self, g, data):
        f = data.draw(ordered_graphs(max_n=4, max_m=5))
        got = [e.phi for e in enumerate_embeddings(g, f)]
        assert got == brute_embeddings(g, f)

    def test_edge_image(self):
        emb = Embedding(4, (2, 4, 5, 8))
        assert emb.edge_image(build_M(2)) == frozenset({(2, 4), (5, 8)})


class TestContains:
    def test_matchings(self):
        assert contains(build_M(4), build_M(2))

    def test_edgeless_host(self):
        assert not contains(OrderedGraph(5, frozenset()), build_M(1))

    def test_nested_host_has_cover_pattern(self):
        # edges (1,24), (7,8), (9,10) realize the pattern; the oracle agrees
        h3 = build_H_d(3)
        m = build_pattern([(1, 6), (2, 3), (4, 5)])
        assert contains(h3, m)
        assert brute_embeddings(h3, m) != []


class TestBlowup:
    def test_single_edge(self):
        assert blowup(build_M(1), 2).edges == frozenset({(1, 3), (1, 4), (2, 3), (2, 4)})

    def test_identity(self):
        q = build_Q(2, 2)
        assert blowup(q, 1) == q

    def test_edge_scaling(self):
        for k in (2, 3):
            f = build_P(3)
            assert blowup(f, k).e == k * k * f.e

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            blowup(build_P(2), 0)

    @settings(max_examples=60, deadline=None)
    @given(ordered_graphs(max_n=5, max_m=6), st.integers(1, 3))
    def test_contains_base(self, f, k):
        if f.e >= 1:
            assert contains(blowup(f, k), f)


class TestPlusI:
    def test_concatenation(self):
        assert plus_I(build_M(1), [1, 2]).edges == frozenset({(1, 2), (3, 4)})

    def test_interleaved(self):
        assert plus_I(build_M(1), [1, 3]).edges == frozenset({(1, 3), (2, 4)})

    def test_offset_positions(self):
        assert plus_I(build_M(1), [2, 3]).edges == frozenset({(2, 3), (1, 4)})

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            plus_I(build_M(2), [1, 2, 3])

    @settings(max_examples=60, deadline=None)
    @given(ordered_graphs(max_n=5, max_m=6), st.data())
    def test_contains_base(self, f, data):
        positions = data.draw(
            st.sets(st.integers(1, 2 * f.n), min_size=f.n, max_size=f.n)
        )
        doubled = plus_I(f, positions)
        assert doubled.e == 2 * f.e
        if f.e >= 1:
            assert contains(doubled, f)


class TestChromatic:
    def test_examples(self):
        assert chromatic_number(build_Q(2, 2)) == 3
        assert chromatic_number(build_M(3)) == 2
        assert chromatic_number(OrderedGraph(4, frozenset())) == 1

    def test_size_guard(self):
        with pytest.raises(ValueError):
            chromatic_number(OrderedGraph(21, frozenset()))

    def test_odd_cycle_detection(self):
        assert has_odd_cycle(build_Q(2, 2))
        assert not has_odd_cycle(build_Q(3, 2))
        assert not has_odd_cycle(build_M(4))

    @settings(max_examples=60, deadline=None)
    @given(ordered_graphs(max_n=7, max_m=12))
    def test_matches_assignment_scan(self, g):
        assert chromatic_number(g) == brute_chromatic(g)


class TestFileFormat:
    def test_roundtrip(self):
        g = build_B(2, 9)
        assert loads_graph(dumps_graph(g)) == g

    def test_canonical_sorting(self):
        payload = json.loads(dumps_graph(graph(4, [(3, 4), (1, 2)])))
        assert payload["edges"] == sorted(payload["edges"])

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            loads_graph('{"n": 3}')
        with pytest.raises(ValueError):
            loads_graph('{"n": 3, "edges": [[1, 2, 3]]}')

    @settings(max_examples=40, deadline=None)
    @given(ordered_graphs())
    def test_roundtrip_random(self, g):
        assert loads_graph(dumps_graph(g)) == g
