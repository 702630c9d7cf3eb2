from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hedcs.engine import build
from hedcs.errors import ParameterError
from hedcs.graph import EdgeSetView, edge_key
from hedcs.harness import generate_trace
from hedcs.verify import (
    HEDCS_I,
    HEDCS_II,
    U_EXACT,
    HedcsWitness,
    check_sampled_matching,
    check_state_invariants,
    is_valid_hedcs,
    sampled_matching_precondition,
)
from oracles import random_graph


def props(verdict):
    return {v.prop for v in verdict.violations}


class TestWitness:
    def test_empty(self):
        assert is_valid_hedcs(HedcsWitness([set()], [], 3, 1)).valid

    def test_path_violates_property_i(self):
        v = is_valid_hedcs(HedcsWitness([{(0, 1), (1, 2)}], [(0, 1), (1, 2)], 2, 1))
        assert not v.valid and props(v) == {HEDCS_I}
        assert v.violations[0].level == 1 and v.violations[0].edge == (0, 1)

    def test_triangle_two_edges(self):
        tri = [(0, 1), (1, 2), (0, 2)]
        assert is_valid_hedcs(HedcsWitness([{(0, 1), (1, 2)}], tri, 3, 1)).valid

    def test_property_ii(self):
        v = is_valid_hedcs(HedcsWitness([set()], [(0, 1)], 3, 1))
        assert props(v) == {HEDCS_II}

    def test_not_nested(self):
        with pytest.raises(ParameterError):
            is_valid_hedcs(HedcsWitness([{(0, 1)}, {(2, 3)}], [], 3, 2))

    def test_layer_count_mismatch(self):
        with pytest.raises(ParameterError):
            is_valid_hedcs(HedcsWitness([set()], [], 3, 2))

    def test_first_only_stops_early(self):
        star = {(0, i) for i in range(1, 6)}
        assert len(is_valid_hedcs(HedcsWitness([star], star, 2, 1), first_only=True).violations) == 1

    def test_verdict_serialises(self):
        d = is_valid_hedcs(HedcsWitness([{(0, 1), (1, 2)}], [], 2, 1)).to_dict()
        assert d["valid"] is False and d["violations"][0]["edge"] == [0, 1]


def oracle_valid(layers, base, beta):
    """Direct restatement of the two properties over explicit degree counts."""
    prev = set()
    for h in layers:
        for u, v in h - prev:
            if sum((u in f) + (v in f) for f in h) > beta:
                return False
        prev = h
    top = layers[-1]
    for u, v in set(base) - top:
        if sum((u in f) + (v in f) for f in top) < beta - 1:
            return False
    return True


@st.composite
def witnesses(draw):
    n = draw(st.integers(2, 7))
    all_edges = list(itertools.combinations(range(n), 2))
    base = draw(st.sets(st.sampled_from(all_edges)))
    k = draw(st.integers(1, 3))
    layers, cur = [], set()
    for _ in range(k):
        cur = cur | draw(st.sets(st.sampled_from(all_edges), max_size=4))
        layers.append(set(cur))
    return layers, base, draw(st.integers(2, 5))


@settings(max_examples=300, deadline=None)
@given(witnesses(), st.data())
def test_verdict_matches_oracle_and_single_flips(w, data):
    layers, base, beta = w
    assert is_valid_hedcs(HedcsWitness(layers, base, beta)).valid == oracle_valid(layers, base, beta)
    # Flip one edge in the top layer: the verdict must track the oracle exactly.
    n = 1 + max((max(e) for e in base | layers[-1]), default=1)
    e = data.draw(st.sampled_from(list(itertools.combinations(range(max(n, 2)), 2))))
    top = set(layers[-1]) ^ {e}
    flipped = [h & top for h in layers[:-1]] + [top]
    assert is_valid_hedcs(HedcsWitness(flipped, base, beta)).valid == oracle_valid(flipped, base, beta)


class TestStateInvariants:
    def engine(self, seed=1):
        rng = random.Random(seed)
        return build(40, 2, 4, 0.05, 40, 1000, seed=seed, edges=random_graph(40, 0.3, rng))

    def test_fresh_state_valid(self):
        assert check_state_invariants(self.engine()).valid

    def test_injected_h_edge_in_u(self):
        eng = self.engine()
        h1 = sorted(eng.layer(1))
        assert h1
        eng.U[2].add(h1[0])
        assert U_EXACT in props(check_state_invariants(eng))

    def test_dropped_u_edge(self):
        for seed in range(1, 20):
            eng = self.engine(seed)
            if eng.U[2]:
                eng.U[2].discard(min(eng.U[2]))
                assert U_EXACT in props(check_state_invariants(eng))
                return
        pytest.fail("no seed produced a non-empty U_2")

    def test_foreign_matching_edge(self):
        eng = build(6, 1, 3, 0.05, 6, 20, edges=[(0, 1)])
        eng.M.add(2, 3)
        assert not check_state_invariants(eng).valid

    def test_side_effect_free(self):
        eng = self.engine()
        snap = (dict(eng.h_level), [set(u) for u in eng.U], list(eng.c), sorted(eng.matching.edges()))
        check_state_invariants(eng)
        assert snap == (dict(eng.h_level), [set(u) for u in eng.U], list(eng.c), sorted(eng.matching.edges()))

    def test_long_trace(self):
        trace = generate_trace("churn", 200, 20, 1500, 10_000, seed=5)
        eng = build(trace.n, 2, 8, 0.05, trace.delta_cap, trace.m_cap, seed=5)
        for idx, (op, u, v) in enumerate(trace.events, 1):
            eng.apply_update(op, u, v)
            if idx % 100 == 0:
                verdict = check_state_invariants(eng)
                assert verdict.valid, f"update {idx}: {verdict}"


class TestSampledMatching:
    def test_full_probability(self):
        rng = random.Random(1)
        g = EdgeSetView(30, random_graph(30, 0.3, rng))
        rep = check_sampled_matching(g, 1.0, 5)
        assert rep.success_fraction == 1.0

    def test_empty_graph(self):
        rep = check_sampled_matching(EdgeSetView(10, []), 0.5, 7)
        assert rep.success_fraction == 1.0 and rep.edges == 0

    def test_precondition_flag(self):
        rng = random.Random(2)
        g = EdgeSetView(50, random_graph(50, 0.2, rng))
        assert not check_sampled_matching(g, 1e-4, 2).precondition_met

    def test_precondition_formula(self):
        import math

        assert sampled_matching_precondition(400, 40, 8000) == pytest.approx(15 * math.log(400) / 40)

    def test_regularish_graph(self):
        n, d = 400, 200
        rng = random.Random(3)
        edges = set()
        for _ in range(d // 2):
            perm = list(range(n))
            rng.shuffle(perm)
            for i in range(n):
                a, b = perm[i], perm[(i + 1) % n]
                if a != b:
                    edges.add(edge_key(a, b))
        g = EdgeSetView(n, edges)
        delta = max(g.degree(v) for v in range(n))
        p = sampled_matching_precondition(n, delta, len(edges))
        rep = check_sampled_matching(g, p, 200, seed=4, delta=delta)
        assert rep.precondition_met and rep.success_fraction >= 0.99
