from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from hedcs.errors import DegreeCapError, DuplicateEdgeError, EdgeCapError, MissingEdgeError, ParameterError
from hedcs.graph import (
    RANK_SPACE,
    EdgeSetView,
    RankedDynamicGraph,
    compute_level_probs,
    edge_degree,
    edge_key,
)


def make_graph(n=10, k=1, eps=0.05, delta=8, m=100, seed=0):
    return RankedDynamicGraph(n, delta, m, compute_level_probs(k, eps, delta), seed)


class TestLevelProbs:
    def test_single_level_half_epsilon(self):
        assert compute_level_probs(1, 0.5, 4096).probs == (0.0078125, 1.0)

    def test_k_zero_only_top_level(self):
        p = compute_level_probs(0, 0.1, 100)
        assert p.probs == (1.0,)
        assert p.thresholds == (RANK_SPACE,)

    def test_two_levels_large_delta(self):
        probs = compute_level_probs(2, 0.1, 10**6).probs
        assert probs[0] == pytest.approx(1e-5, rel=1e-12)
        assert probs[1] == pytest.approx(1e-3, rel=1e-12)
        assert probs[2] == 1.0

    def test_clamped_to_one_for_tiny_delta(self):
        assert compute_level_probs(3, 0.08, 2).probs[-1] == 1.0
        assert all(p <= 1.0 for p in compute_level_probs(3, 0.08, 2).probs)

    @pytest.mark.parametrize("eps", [0.0, 1.0, -0.1, 1.5])
    def test_bad_epsilon(self, eps):
        with pytest.raises(ParameterError):
            compute_level_probs(1, eps, 100)

    @pytest.mark.parametrize("delta", [0, 1])
    def test_bad_delta(self, delta):
        with pytest.raises(ParameterError):
            compute_level_probs(1, 0.05, delta)

    def test_thresholds_are_floors(self):
        p = compute_level_probs(1, 0.05, 400)
        assert p.thresholds[0] == math.floor(p.probs[0] * 2**64)

    @given(st.integers(0, 5), st.floats(1e-4, 1 / 12 - 1e-9), st.integers(2, 10**7))
    def test_monotone_and_top_is_one(self, k, eps, delta):
        p = compute_level_probs(k, eps, delta)
        assert list(p.probs) == sorted(p.probs)
        assert list(p.thresholds) == sorted(p.thresholds)
        assert p.probs[-1] == 1.0
        if k >= 1:
            assert p.probs[k - 1] <= eps * (1 + 1e-12)


class TestRankedGraph:
    def test_insert_updates_degrees(self):
        g = make_graph()
        r = g.insert_edge(0, 1)
        assert 0 <= r < RANK_SPACE
        assert g.degree(0) == g.degree(1) == 1
        assert g.has_edge(1, 0)

    def test_duplicate_insert(self):
        g = make_graph()
        g.insert_edge(0, 1)
        with pytest.raises(DuplicateEdgeError):
            g.insert_edge(1, 0)

    def test_same_seed_same_ranks(self):
        seq = [(0, 1), (2, 3), (1, 4), (5, 9)]
        ranks = []
        for _ in range(2):
            g = make_graph(seed=42)
            ranks.append([g.insert_edge(u, v) for u, v in seq])
        assert ranks[0] == ranks[1]

    def test_delete_only_edge(self):
        g = make_graph()
        r = g.insert_edge(3, 4)
        assert g.delete_edge(4, 3) == r
        assert len(g) == 0 and list(g.edges()) == []

    def test_delete_absent(self):
        with pytest.raises(MissingEdgeError):
            make_graph().delete_edge(0, 1)

    def test_reinsert_draws_fresh_rank(self):
        g = make_graph(seed=7)
        r1 = g.insert_edge(0, 1)
        g.delete_edge(0, 1)
        r2 = g.insert_edge(0, 1)
        assert r1 != r2

    def test_degree_cap(self):
        g = make_graph(delta=2)
        g.insert_edge(0, 1)
        g.insert_edge(0, 2)
        with pytest.raises(DegreeCapError):
            g.insert_edge(0, 3)
        assert not g.has_edge(0, 3)

    def test_edge_cap(self):
        g = make_graph(m=1)
        g.insert_edge(0, 1)
        with pytest.raises(EdgeCapError):
            g.insert_edge(2, 3)

    def test_self_loop_rejected(self):
        with pytest.raises(ParameterError):
            make_graph().insert_edge(2, 2)

    def test_vertex_range(self):
        with pytest.raises(ParameterError):
            make_graph(n=3).insert_edge(0, 3)


class TestLevelOf:
    def test_rank_zero_is_level_one(self):
        g = make_graph(k=2, delta=1000)
        assert g.level_of_rank(0) == 1

    def test_top_rank_is_last_level(self):
        g = make_graph(k=2, delta=1000)
        assert g.level_of_rank(RANK_SPACE - 1) == 3

    def test_small_rank_single_level(self):
        g = RankedDynamicGraph(4, 4096, 10, compute_level_probs(1, 0.5, 4096))
        assert g.params.probs == (0.0078125, 1.0)
        assert g.level_of_rank(math.floor(0.004 * 2**64)) == 1

    def test_level_of_present_edge(self):
        g = make_graph(k=2, delta=1000)
        r = g.insert_edge(0, 1)
        assert g.level_of(0, 1) == g.level_of_rank(r)
        with pytest.raises(MissingEdgeError):
            g.level_of(1, 2)


class TestEdgeDegree:
    def test_single_edge(self):
        assert edge_degree(EdgeSetView(3, [(0, 1)]), (0, 1)) == 2

    def test_empty(self):
        assert edge_degree(EdgeSetView(3, []), (0, 2)) == 0

    def test_non_member_pair(self):
        assert edge_degree(EdgeSetView(3, [(0, 1), (1, 2)]), (0, 2)) == 2

    def test_accepts_edge_iterables(self):
        assert edge_degree([(0, 1), (1, 2)], (1, 2)) == 3


@st.composite
def update_sequences(draw):
    n = draw(st.integers(2, 12))
    ops = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=60))
    return n, [(u, v) for u, v in ops if u != v]


@settings(max_examples=80, deadline=None)
@given(update_sequences(), st.integers(0, 3), st.integers(0, 2**32))
def test_nested_levels_and_rank_persistence(seq, k, seed):
    """Toggling edges keeps G_1 <= ... <= G_{k+1} and ranks fixed while present."""
    n, pairs = seq
    g = RankedDynamicGraph(n, n, n * n, compute_level_probs(k, 0.07, max(2, n)), seed)
    seen: dict[tuple[int, int], int] = {}
    for u, v in pairs:
        e = edge_key(u, v)
        if g.has_edge(*e):
            assert g.delete_edge(*e) == seen.pop(e)
        else:
            seen[e] = g.insert_edge(*e)
        for f, r in seen.items():
            assert g.rank(*f) == r
            member = [g.in_level(*f, i) for i in range(1, k + 2)]
            assert member[-1]
            assert member == sorted(member)
            assert g.level_of(*f) == member.index(True) + 1
        assert g.edge_count == len(seen)
        for i in range(1, k + 2):
            view = g.view(i)
            assert set(view.edges()) == {f for f in seen if g.in_level(*f, i)}
