"""Independent checkers for the structures maintained by :mod:`hedcs.engine`.

Everything here recomputes degrees from raw edge sets.  Nothing reuses the
engine's degree tables, so a bookkeeping bug in the engine shows up as a
violation instead of being silently trusted.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .errors import ParameterError
from .graph import Edge, EdgeSetView, RankedDynamicGraph, edge_key
from .matching import maximum_matching_exact

# Property names used in violation descriptors.
HEDCS_I = "hedcs-i"            # deg_{H_i}(e) <= beta for e in H_i \ H_{i-1}
HEDCS_II = "hedcs-ii"          # deg_{H_k}(e) >= beta - 1 for e in base \ H_k
G_CHAIN = "g-chain"
H_CHAIN = "h-chain"
U_CHAIN = "u-chain"
U_EXACT = "u-characterization"
H_DEGREE = "h-max-degree"
M_SUBSET = "matching-subset"
M_DISJOINT = "matching-disjoint"
MAXIMAL = "maximal-matching"


@dataclass(frozen=True)
class Violation:
    prop: str
    level: int | None = None
    edge: Edge | None = None
    detail: str = ""

    def __str__(self) -> str:
        where = []
        if self.level is not None:
            where.append(f"level {self.level}")
        if self.edge is not None:
            where.append(f"edge {self.edge}")
        loc = f" at {', '.join(where)}" if where else ""
        return f"{self.prop}{loc}: {self.detail}"


@dataclass
class Verdict:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def add(self, prop: str, level: int | None = None, edge: Edge | None = None, detail: str = "") -> None:
        self.violations.append(Violation(prop, level, edge, detail))

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {**asdict(v), "edge": list(v.edge) if v.edge is not None else None} for v in self.violations
            ],
        }

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        head = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        return head + (f"; ... {more} more" if more > 0 else "")


@dataclass
class HedcsWitness:
    decomposition: Sequence[Iterable[Edge]]
    base: Iterable[Edge]
    beta: int
    k: int | None = None


def _degrees(edges: Iterable[Edge]) -> dict[int, int]:
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def is_valid_hedcs(w: HedcsWitness, first_only: bool = False) -> Verdict:
    """Check properties (i) and (ii) of a hierarchical EDCS witness.

    Raises :class:`ParameterError` if the decomposition is not nested.
    """
    layers = [{edge_key(u, v) for u, v in h} for h in w.decomposition]
    k = len(layers) if w.k is None else w.k
    if len(layers) != k:
        raise ParameterError(f"witness has {len(layers)} layers but k={k}")
    for i in range(1, k):
        if not layers[i - 1] <= layers[i]:
            raise ParameterError(f"layer {i} is not contained in layer {i + 1}")
    beta = w.beta
    verdict = Verdict()
    prev: set[Edge] = set()
    for i, h in enumerate(layers, start=1):
        deg = _degrees(h)
        for e in sorted(h - prev):
            d = deg[e[0]] + deg[e[1]]
            if d > beta:
                verdict.add(HEDCS_I, i, e, f"deg_H{i}(e)={d} > beta={beta}")
                if first_only:
                    return verdict
        prev = h
    top = layers[-1] if layers else set()
    deg = _degrees(top)
    for e in sorted({edge_key(u, v) for u, v in w.base} - top):
        d = deg.get(e[0], 0) + deg.get(e[1], 0)
        if d < beta - 1:
            verdict.add(HEDCS_II, k, e, f"deg_H{k}(e)={d} < beta-1={beta - 1}")
            if first_only:
                return verdict
    return verdict


def engine_witness(engine) -> HedcsWitness:
    """The witness the engine claims: ``(H_1..H_k)`` for ``(G \\ G_k) \\ U_{k+1}``."""
    g: RankedDynamicGraph = engine.g
    k = engine.k
    t_k = g.params.thresholds[k - 1] if k >= 1 else 0
    u_top = engine.uncovered(k + 1)
    base = [e for r, e in g.ranked_edges() if r >= t_k and e not in u_top]
    return HedcsWitness(engine.layers(), base, engine.beta, k)


def check_state_invariants(engine, check_maintainers: bool = True) -> Verdict:
    """Full rescan of the engine's structural invariants.

    Checks nestedness of the ``G``, ``H`` and ``U`` chains, that ``U_{i+1}`` is
    exactly the ``(H_i, beta)``-underfull part of ``G \\ G_i``, the maximum
    degree of every ``H_i``, and that ``M`` is a matching contained in ``G``.
    Read-only.
    """
    g: RankedDynamicGraph = engine.g
    k, beta = engine.k, engine.beta
    thresholds = g.params.thresholds
    verdict = Verdict()

    ranked = list(g.ranked_edges())
    present = {e for _, e in ranked}
    for r, e in ranked:
        member = [r < t for t in thresholds]
        for i in range(1, len(member)):
            if member[i - 1] and not member[i]:
                verdict.add(G_CHAIN, i, e, f"in G_{i} but not G_{i + 1}")
        if not member[-1]:
            verdict.add(G_CHAIN, k + 1, e, "not in G_{k+1} = G")

    layers = [set()] + [set(h) for h in engine.layers()]
    for i in range(1, k + 1):
        if not layers[i - 1] <= layers[i]:
            for e in sorted(layers[i - 1] - layers[i]):
                verdict.add(H_CHAIN, i, e, f"in H_{i - 1} but not H_{i}")

    uncovered = [None, present] + [engine.uncovered(i) for i in range(2, k + 2)]
    for i in range(2, k + 2):
        for e in sorted(uncovered[i] - uncovered[i - 1]):
            verdict.add(U_CHAIN, i, e, f"in U_{i} but not U_{i - 1}")

    rank_of = {e: r for r, e in ranked}
    for i in range(1, k + 1):
        deg = _degrees(layers[i])
        for v, d in deg.items():
            if d > beta:
                verdict.add(H_DEGREE, i, None, f"vertex {v} has degree {d} > beta={beta}")
        t_i = thresholds[i - 1]
        expected = {
            e for e, r in rank_of.items()
            if r >= t_i and deg.get(e[0], 0) + deg.get(e[1], 0) < beta - 1
        }
        actual = uncovered[i + 1]
        for e in sorted(expected - actual):
            verdict.add(U_EXACT, i + 1, e, f"(H_{i},beta)-underfull edge of G\\G_{i} missing from U_{i + 1}")
        for e in sorted(actual - expected):
            verdict.add(U_EXACT, i + 1, e, f"edge in U_{i + 1} is not an underfull edge of G\\G_{i}")

    mate = engine.matching.mate
    seen = 0
    for v, w in enumerate(mate):
        if w < 0:
            continue
        if not 0 <= w < len(mate) or mate[w] != v:
            verdict.add(M_DISJOINT, None, None, f"vertex {v} -> {w} is not symmetric")
            continue
        if v < w:
            seen += 1
            if (v, w) not in present:
                verdict.add(M_SUBSET, None, (v, w), "matched edge not in G")
    if seen != engine.matching.size:
        verdict.add(M_DISJOINT, None, None, f"size counter {engine.matching.size} != {seen} pairs")

    if check_maintainers:
        for i in range(1, k + 2):
            mm = engine.mm[i]
            t_i = thresholds[i - 1]
            mm_mate = mm.matching.mate
            for v, w in enumerate(mm_mate):
                if w > v and not (w in g.adj[v] and g.adj[v][w] < t_i):
                    verdict.add(MAXIMAL, i, (v, w), "maintained matching uses an edge outside G_i")
            for e, r in rank_of.items():
                if r < t_i and mm_mate[e[0]] < 0 and mm_mate[e[1]] < 0:
                    verdict.add(MAXIMAL, i, e, "edge of G_i with both endpoints free")
    return verdict


@dataclass
class SampledMatchingReport:
    n: int
    edges: int
    delta: int
    p: float
    trials: int
    target: float
    successes: int = 0
    precondition_met: bool = True
    min_mu: int | None = None

    @property
    def success_fraction(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["success_fraction"] = self.success_fraction
        return d


def sampled_matching_precondition(n: int, delta: int, m: int) -> float:
    """Smallest legal ``p``: ``max(15 ln n / delta, 32 ln n / |E|)``."""
    ln = math.log(n)
    return max(15 * ln / delta, 32 * ln / m)


def check_sampled_matching(
    graph, p: float, trials: int, seed: int = 0, delta: int | None = None
) -> SampledMatchingReport:
    """Fraction of ``trials`` edge samples ``G_p`` with ``mu(G_p) >= |E| / (8 delta)``.

    ``graph`` needs ``n`` and ``edges()``; ``delta`` defaults to its maximum
    degree.  A greedy maximal matching that already reaches the target is used
    as a certificate; only when it falls short is the exact oracle consulted.
    """
    edges = sorted({edge_key(u, v) for u, v in graph.edges()})
    n = graph.n
    m = len(edges)
    if delta is None:
        deg = _degrees(edges)
        delta = max(deg.values(), default=0)
    if m == 0:
        return SampledMatchingReport(n, 0, delta, p, trials, 0.0, trials, True, 0)
    target = m / (8 * delta)
    report = SampledMatchingReport(n, m, delta, p, trials, target)
    if p < sampled_matching_precondition(n, delta, m) or p > 1:
        report.precondition_met = False
    rng = random.Random(seed)
    for _ in range(trials):
        sample = [e for e in edges if rng.random() < p]
        mate = [-1] * n
        size = 0
        for u, v in sample:
            if mate[u] < 0 and mate[v] < 0:
                mate[u], mate[v] = v, u
                size += 1
        if size < target:
            size = maximum_matching_exact(EdgeSetView(n, sample), max_vertices=max(n, 2000)).size
        report.min_mu = size if report.min_mu is None else min(report.min_mu, size)
        if size >= target:
            report.successes += 1
    return report
