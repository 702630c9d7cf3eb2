"""Lazy maintenance of a hierarchical EDCS and its output matching.

The engine keeps, for levels ``i = 1..k``:

* ``H_i`` -- nested layers, stored once as ``edge -> level tag`` where the tag
  is the unique ``i`` with ``e in H_i \\ H_{i-1}``;
* ``deg_{H_i}(v)`` tables for O(1) underfull/overfull tests;
* ``U_{i+1}`` -- the ``(H_i, beta)``-underfull edges of ``G \\ G_i``
  (``U_1 = G`` is implicit);
* a maximal matching of every ``G_i`` whose size stands in for ``mu_i``;

plus one counter per level and the output matching ``M``.  Cheap bookkeeping
runs on every update; the expensive recomputation of levels ``j..k`` runs when
level ``j``'s counter reaches ``(eps / k) * (mu_j + 1) / p_j``.

Deleted edges are never removed from ``H_i`` between recomputations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import GraphError, ParameterError
from .graph import Edge, RankedDynamicGraph, compute_level_probs, edge_key
from .matching import Matching, MaximalMatchingMaintainer, approx_max_matching_with_work

AMORTIZED = "amortized"
DEAMORTIZED = "deamortized"
MODES = (AMORTIZED, DEAMORTIZED)

EPSILON_MAX = 1.0 / 12.0


# --- potential and add_layer -------------------------------------------------


@dataclass(frozen=True)
class Potential:
    phi1: int
    phi2: int

    @property
    def phi(self) -> int:
        return self.phi1 - self.phi2


def potential_of(h_i: Iterable[Edge], h_prev: Iterable[Edge], beta: int) -> Potential:
    """``phi1 = (2*beta - 1)|H_i|`` and ``phi2 = sum of deg_{H_i}(e)`` over ``H_i``."""
    edges = {edge_key(u, v) for u, v in h_i}
    prev = {edge_key(u, v) for u, v in h_prev}
    if not prev <= edges:
        raise ParameterError("h_prev must be a subset of h_i")
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    phi2 = sum(deg[u] + deg[v] for u, v in edges)
    return Potential((2 * beta - 1) * len(edges), phi2)


@dataclass
class AddLayerStats:
    """Instrumentation of one add_layer run, used by the acceptance checks."""

    level: int
    gamma_size: int
    mu: int
    beta: int
    tau: int
    visited: int = 0
    insertions: int = 0
    removals: int = 0
    skipped_present: int = 0
    phi_start: int = 0
    phi_end: int = 0
    phi_max: int = 0
    min_phi_step: int | None = None
    exhausted: bool = False
    stale: int = 0

    @property
    def bound(self) -> int:
        return 4 * self.mu * self.beta * self.beta

    @property
    def phi_bound(self) -> int:
        """Cap on the potential: each deleted-but-kept base edge adds at most ``2*beta - 1``."""
        return self.bound + (2 * self.beta - 1) * self.stale

    @property
    def strict_phi_excess(self) -> bool:
        return self.phi_max > self.bound

    def violations(self) -> list[str]:
        out = []
        if self.insertions > self.bound:
            out.append(f"insertions {self.insertions} > 4*mu*beta^2 = {self.bound}")
        if self.min_phi_step is not None and self.min_phi_step < 1:
            out.append(f"potential step {self.min_phi_step} < 1")
        if self.phi_max > self.phi_bound:
            out.append(f"potential {self.phi_max} > 4*mu*beta^2 + (2*beta-1)*stale = {self.phi_bound}")
        if self.phi_start < 0:
            out.append(f"initial potential {self.phi_start} < 0")
        return out


def _add_layer(
    gamma: Sequence[Edge],
    base_edges: set[Edge] | dict[Edge, int],
    base_deg: list[int],
    base_size: int,
    mu_i: int,
    beta: int,
    level: int = 0,
    stale: int = 0,
) -> tuple[set[Edge], list[int], AddLayerStats]:
    """Core of add_layer over a rank-sorted ``gamma``.

    ``base_deg`` is consumed (mutated into the degrees of ``H_i``).  Returns the
    new edges ``H_i \\ H_{i-1}``, the final degree table and the stats.
    """
    deg = base_deg
    new_adj: dict[int, set[int]] = {}
    new_edges: set[Edge] = set()
    tau = len(gamma) // (4 * mu_i * beta * beta + 1)
    stats = AddLayerStats(level, len(gamma), mu_i, beta, tau, stale=stale)
    w1 = 2 * beta - 1
    size = base_size
    sumsq = sum(d * d for d in deg) if base_size else 0
    phi = w1 * size - sumsq
    stats.phi_start = stats.phi_max = phi
    steps: list[int] = []

    def remove_overfull(x: int) -> None:
        nonlocal size, sumsq, phi
        nbrs = new_adj.get(x)
        if not nbrs:
            return
        dx = deg[x]
        cands = [w for w in nbrs if dx + deg[w] > beta]
        if not cands:
            return
        w = min(cands)
        nbrs.discard(w)
        new_adj[w].discard(x)
        new_edges.discard(edge_key(x, w))
        dw = deg[w]
        sumsq -= (2 * dx - 1) + (2 * dw - 1)
        deg[x] = dx - 1
        deg[w] = dw - 1
        size -= 1
        before = phi
        phi = w1 * size - sumsq
        steps.append(phi - before)
        stats.removals += 1

    eta = 0
    for e in gamma:
        stats.visited += 1
        eta += 1
        u, v = e
        du, dv = deg[u], deg[v]
        if du + dv < beta - 1:
            if e in base_edges:
                # A stale layer edge that was deleted and re-inserted: it is
                # already in H_i, so there is nothing to add.
                stats.skipped_present += 1
            else:
                new_edges.add(e)
                new_adj.setdefault(u, set()).add(v)
                new_adj.setdefault(v, set()).add(u)
                sumsq += (2 * du + 1) + (2 * dv + 1)
                deg[u] = du + 1
                deg[v] = dv + 1
                size += 1
                before = phi
                phi = w1 * size - sumsq
                steps.append(phi - before)
                stats.insertions += 1
                if phi > stats.phi_max:
                    stats.phi_max = phi
                remove_overfull(u)
                remove_overfull(v)
                if phi > stats.phi_max:
                    stats.phi_max = phi
                eta = 0
        if eta > tau:
            break
    else:
        stats.exhausted = True
    stats.phi_end = phi
    if steps:
        stats.min_phi_step = min(steps)
    return new_edges, deg, stats


def add_layer(gamma: Sequence[Edge], h_prev: Iterable[Edge], mu_i: int, beta: int, n: int | None = None) -> set[Edge]:
    """Extend ``h_prev`` greedily by scanning ``gamma`` in the given (rank) order.

    Each ``(H_i, beta)``-underfull edge is added, after which at most one
    ``(H_i, beta)``-overfull edge of ``H_i \\ H_{i-1}`` per endpoint is removed
    (smallest neighbour id first).  The scan stops once more than
    ``floor(|gamma| / (4 mu_i beta^2 + 1))`` consecutive edges were not
    underfull, or when ``gamma`` runs out.  Returns the full ``H_i``.
    """
    h, _ = add_layer_instrumented(gamma, h_prev, mu_i, beta, n)
    return h


def add_layer_instrumented(
    gamma: Sequence[Edge], h_prev: Iterable[Edge], mu_i: int, beta: int, n: int | None = None
) -> tuple[set[Edge], AddLayerStats]:
    if mu_i < 0:
        raise ParameterError("mu_i must be non-negative")
    if beta < 2:
        raise ParameterError("beta must be >= 2")
    gamma = [edge_key(u, v) for u, v in gamma]
    prev = {edge_key(u, v) for u, v in h_prev}
    if n is None:
        n = 1 + max((max(e) for e in (*gamma, *prev)), default=-1)
    deg = [0] * n
    for u, v in prev:
        deg[u] += 1
        deg[v] += 1
    new, _, stats = _add_layer(gamma, prev, deg, len(prev), mu_i, beta)
    return prev | new, stats


# --- engine ------------------------------------------------------------------------


@dataclass
class UpdateReport:
    update_index: int
    op: str
    edge: Edge
    triggered_level: int | None
    work_units: int
    matching_size: int
    completed_level: int | None = None


@dataclass
class RecomputeRecord:
    """Summary of one compute_layers run (levels ``level..k+1``)."""

    level: int
    update_index: int
    work: int
    sparsification: dict[int, float] = field(default_factory=dict)


class _Staged:
    """Fresh structures for levels ``>= level`` produced by one compute_layers run."""

    def __init__(self, level: int, k: int):
        self.level = level
        self.h_new: dict[int, set[Edge]] = {}
        self.h_deg: dict[int, list[int]] = {}
        self.U: dict[int, set[Edge]] = {}
        self.mu: dict[int, int] = {}
        self.M: Matching | None = None
        self.work = 0
        self.stats: list[AddLayerStats] = []
        self.sparsification: dict[int, float] = {}


@dataclass
class _Job:
    staged: _Staged
    budget: int
    remaining: int


class Hedcs:
    """Dynamic HEDCS engine bound to one :class:`RankedDynamicGraph`.

    Build with :meth:`preprocess`.  Feed updates through :meth:`apply_update`;
    never mutate the graph directly afterwards.

    ``on_add_layer`` receives every :class:`AddLayerStats`; ``on_recompute``
    is called with ``(engine, level)`` each time recomputed structures become
    live.  Both exist so that verifiers can observe the engine without being
    part of it.
    """

    def __init__(
        self,
        graph: RankedDynamicGraph,
        beta: int,
        mode: str = AMORTIZED,
        on_add_layer: Callable[[AddLayerStats], None] | None = None,
        on_recompute: Callable[["Hedcs", int], None] | None = None,
    ):
        if beta < 2:
            raise ParameterError(f"beta must be >= 2, got {beta}")
        if mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
        self.g = graph
        self.params = graph.params
        self.k = graph.params.k
        self.k_eff = max(self.k, 1)
        self.beta = beta
        self.epsilon = graph.params.epsilon
        self.mode = mode
        self.on_add_layer = on_add_layer
        self.on_recompute = on_recompute
        n, k = graph.n, self.k
        self.h_level: dict[Edge, int] = {}
        self.h_count = [0] * (k + 1)
        self.h_deg: list[list[int]] = [[0] * n for _ in range(k + 1)]
        self.U: list[set[Edge]] = [set() for _ in range(k + 2)]
        self.c = [0] * (k + 2)
        self.mu = [0] * (k + 2)
        self.mm = [None] + [MaximalMatchingMaintainer(graph.view(i)) for i in range(1, k + 2)]
        self.M = Matching(n)
        self.update_index = 0
        self.job: _Job | None = None
        self.recomputations = [0] * (k + 2)
        self.history: list[RecomputeRecord] = []
        self.sparsification = [None] * (k + 2)

    # -- construction ---------------------------------------------------------

    @classmethod
    def preprocess(
        cls,
        graph: RankedDynamicGraph,
        k: int,
        beta: int,
        epsilon: float,
        mode: str = AMORTIZED,
        on_add_layer: Callable[[AddLayerStats], None] | None = None,
        on_recompute: Callable[["Hedcs", int], None] | None = None,
    ) -> "Hedcs":
        """Set level probabilities on ``graph`` and run compute_layers(1)."""
        if not 0.0 < epsilon < EPSILON_MAX:
            raise ParameterError(f"epsilon must lie in (0, 1/12), got {epsilon!r}")
        if beta < 2:
            raise ParameterError(f"beta must be >= 2, got {beta}")
        graph.params = compute_level_probs(k, epsilon, graph.delta_cap)
        eng = cls(graph, beta, mode, on_add_layer, on_recompute)
        staged = eng._compute(1)
        eng._install(staged)
        return eng

    # -- queries --------------------------------------------------------------

    @property
    def matching(self) -> Matching:
        return self.M

    def current_matching(self) -> Matching:
        return self.M

    def layer(self, i: int) -> set[Edge]:
        """``H_i`` as an explicit edge set (``H_0`` is empty)."""
        return {e for e, t in self.h_level.items() if t <= i}

    def layers(self) -> list[set[Edge]]:
        return [self.layer(i) for i in range(1, self.k + 1)]

    def uncovered(self, i: int) -> set[Edge]:
        """``U_i``; ``U_1`` is the whole current graph."""
        if i == 1:
            return set(self.g.edges())
        return set(self.U[i])

    def threshold(self, j: int) -> float:
        """Counter value that triggers recomputation from level ``j``."""
        return (self.epsilon / self.k_eff) * (self.mm[j].size + 1) / self.params.prob(j)

    def level_sizes(self) -> dict[str, list[int]]:
        k = self.k
        h = [0] * (k + 1)
        acc = 0
        for i in range(1, k + 1):
            acc += self.h_count[i]
            h[i] = acc
        return {
            "U": [self.g.edge_count] + [len(self.U[i]) for i in range(2, k + 2)],
            "H": h[1:],
            "c": self.c[1:],
            "mu": self.mu[1:],
        }

    # -- recomputation -----------------------------------------------------------

    def _compute(self, j: int) -> _Staged:
        """Run compute_layers(j) into fresh structures without touching live state."""
        g, k, beta = self.g, self.k, self.beta
        adj = g.adj
        thresholds = self.params.thresholds
        st = _Staged(j, k)
        work = 0
        # H_{j-1}: edges tagged below j; degrees from the live table.
        prev_edges: dict[Edge, int] = {e: t for e, t in self.h_level.items() if t < j}
        prev_size = len(prev_edges)
        prev_deg = self.h_deg[j - 1]
        u_cur: Iterable[Edge] | None = None
        for i in range(j, k + 1):
            t_i = thresholds[i - 1]
            if i == 1:
                ranked = list(g.ranked_edges())
                pool = [e for _, e in ranked]
                gamma_r = [(r, e) for r, e in ranked if r < t_i]
            else:
                pool = self.U[i] if u_cur is None else u_cur
                gamma_r = []
                for e in pool:
                    r = adj[e[0]][e[1]]
                    if r < t_i:
                        gamma_r.append((r, e))
            work += len(pool)
            gamma_r.sort()
            gamma = [e for _, e in gamma_r]
            mu_i = self.mm[i].size
            # Base edges outside G_i (deleted, or re-inserted with a new rank) for the potential cap.
            stale = sum(1 for a, b in prev_edges if b not in adj[a] or adj[a][b] >= t_i)
            new, deg, stats = _add_layer(gamma, prev_edges, list(prev_deg), prev_size, mu_i, beta, i, stale)
            work += stats.visited + beta * (stats.insertions + stats.removals)
            st.stats.append(stats)
            if self.on_add_layer is not None:
                self.on_add_layer(stats)
            nxt: set[Edge] = set()
            for e in pool:
                a, b = e
                if adj[a][b] >= t_i and deg[a] + deg[b] < beta - 1:
                    nxt.add(e)
            work += len(pool)
            st.h_new[i] = new
            st.h_deg[i] = deg
            st.U[i + 1] = nxt
            st.mu[i] = mu_i
            st.sparsification[i] = (
                len(nxt) * self.params.prob(i) / (max(mu_i, 1) * beta * beta * math.log(max(g.n, 2)))
            )
            for e in new:
                prev_edges[e] = i
            prev_size = len(prev_edges)
            prev_deg = deg
            u_cur = nxt
        st.mu[k + 1] = self.mm[k + 1].size
        if k == 0:
            pool_m: Iterable[Edge] = g.edges()
        else:
            u_top = self.U[k + 1] if u_cur is None else u_cur
            top = set(u_top)
            top.update(e for e in prev_edges if e[1] in adj[e[0]])
            pool_m = top
        m, mw = approx_max_matching_with_work(g.n, sorted(pool_m), self.epsilon, self.M)
        st.M = m
        work += mw
        st.work = work
        return st

    def _install(self, st: _Staged) -> None:
        j, k = st.level, self.k
        if j <= k:
            self.h_level = {e: t for e, t in self.h_level.items() if t < j}
            for i in range(j, k + 1):
                for e in st.h_new[i]:
                    self.h_level[e] = i
                self.h_count[i] = len(st.h_new[i])
                self.h_deg[i] = st.h_deg[i]
                self.U[i + 1] = st.U[i + 1]
                self.mu[i] = st.mu[i]
                self.sparsification[i] = st.sparsification[i]
        self.mu[k + 1] = st.mu[k + 1]
        self.M = st.M
        for i in range(j, k + 2):
            self.recomputations[i] += 1
        self.history.append(RecomputeRecord(j, self.update_index, st.work, dict(st.sparsification)))
        if self.on_recompute is not None:
            self.on_recompute(self, j)

    def compute_layers(self, j: int) -> int:
        """Recompute levels ``j..k``, ``mu_j..mu_{k+1}`` and ``M`` immediately.

        Counters are left alone; returns the work spent.
        """
        if not 1 <= j <= self.k + 1:
            raise ParameterError(f"level {j} outside [1, {self.k + 1}]")
        st = self._compute(j)
        self._install(st)
        return st.work

    # -- updates ----------------------------------------------------------------

    def apply_update(self, op: str, u: int, v: int) -> UpdateReport:
        """Process one insertion (``'+'``) or deletion (``'-'``) of ``(u, v)``."""
        e = edge_key(u, v)
        if op == "+":
            work = self._trivial_insert(e)
        elif op == "-":
            work = self._trivial_delete(e)
        else:
            raise ParameterError(f"unknown event {op!r}")
        self.update_index += 1
        k = self.k
        c = self.c
        for i in range(1, k + 2):
            c[i] += 1
        triggered = completed = None
        if self.mode == AMORTIZED:
            for j in range(1, k + 2):
                if c[j] >= self.threshold(j):
                    for i in range(j, k + 2):
                        c[i] = 0
                    work += self.compute_layers(j)
                    triggered = completed = j
                    break
        else:
            for j in range(1, k + 2):
                if c[j] >= self.threshold(j) / 2.0:
                    if self.job is None or j < self.job.staged.level:
                        for i in range(j, k + 2):
                            c[i] = 0
                        st = self._compute(j)
                        window = max(1.0, self.threshold(j) / 2.0)
                        budget = max(1, math.ceil(st.work / window))
                        self.job = _Job(st, budget, st.work)
                        triggered = j
                    break
            if self.job is not None:
                job = self.job
                spent = min(job.budget, job.remaining)
                job.remaining -= spent
                work += spent
                if job.remaining <= 0:
                    self.job = None
                    self._install(job.staged)
                    completed = job.staged.level
        return UpdateReport(self.update_index, op, e, triggered, work, self.M.size, completed)

    def _trivial_insert(self, e: Edge) -> int:
        u, v = e
        rank = self.g.insert_edge(u, v)
        lvl = self.g.level_of_rank(rank)
        k, beta = self.k, self.beta
        work = 1
        for i in range(lvl, k + 2):
            mm = self.mm[i]
            mm.insert(u, v)
            work += mm.last_work
        for i in range(1, min(lvl - 1, k) + 1):
            d = self.h_deg[i]
            work += 1
            if d[u] + d[v] < beta - 1:
                self.U[i + 1].add(e)
        job = self.job
        if job is not None:
            st = job.staged
            for i in range(st.level, min(lvl - 1, k) + 1):
                d = st.h_deg[i]
                if d[u] + d[v] < beta - 1:
                    st.U[i + 1].add(e)
        return work

    def _trivial_delete(self, e: Edge) -> int:
        u, v = e
        rank = self.g.delete_edge(u, v)
        lvl = self.g.level_of_rank(rank)
        k = self.k
        work = 1
        for i in range(lvl, k + 2):
            mm = self.mm[i]
            mm.delete(u, v)
            work += mm.last_work
        for i in range(2, k + 2):
            self.U[i].discard(e)
        work += k
        self.M.discard(u, v)
        job = self.job
        if job is not None:
            st = job.staged
            for s in st.U.values():
                s.discard(e)
            st.M.discard(u, v)
        return work

    # -- convenience ---------------------------------------------------------------

    def apply_events(self, events: Iterable[tuple[str, int, int]]) -> list[UpdateReport]:
        return [self.apply_update(op, u, v) for op, u, v in events]

    def __repr__(self) -> str:
        return (
            f"Hedcs(k={self.k}, beta={self.beta}, eps={self.epsilon}, mode={self.mode}, "
            f"m={self.g.edge_count}, |M|={self.M.size})"
        )


def preprocess(
    graph: RankedDynamicGraph, k: int, beta: int, epsilon: float, mode: str = AMORTIZED, **hooks
) -> Hedcs:
    """Functional alias of :meth:`Hedcs.preprocess`."""
    return Hedcs.preprocess(graph, k, beta, epsilon, mode, **hooks)


def build(
    n: int,
    k: int,
    beta: int,
    epsilon: float,
    delta_cap: int,
    m_cap: int,
    seed: int = 0,
    edges: Iterable[Edge] = (),
    mode: str = AMORTIZED,
    **hooks,
) -> Hedcs:
    """Create a graph, insert ``edges`` and preprocess it in one call."""
    params = compute_level_probs(k, epsilon, delta_cap)
    g = RankedDynamicGraph(n, delta_cap, m_cap, params, seed)
    for u, v in edges:
        g.insert_edge(u, v)
    return Hedcs.preprocess(g, k, beta, epsilon, mode, **hooks)


def check_event(graph: RankedDynamicGraph, op: str, u: int, v: int) -> None:
    """Raise :class:`GraphError` if ``op`` is not legal for ``graph`` right now."""
    present = graph.has_edge(u, v)
    if op == "+" and present:
        raise GraphError(f"insert of present edge ({u}, {v})")
    if op == "-" and not present:
        raise GraphError(f"delete of absent edge ({u}, {v})")
