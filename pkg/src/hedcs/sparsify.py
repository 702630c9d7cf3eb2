"""Degree capping: run the engine on a bounded-degree subgraph of ``G``.

Every vertex marks at most ``delta_prime`` of its incident edges and the
subgraph ``G~`` keeps exactly the edges marked by both endpoints.  A vertex
with fewer than ``delta_prime`` marks has marked all of its edges, so any
single update on ``G`` changes ``G~`` by at most three edges.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

from .engine import AMORTIZED, Hedcs, UpdateReport
from .errors import DuplicateEdgeError, MissingEdgeError, ParameterError
from .graph import Edge, RankedDynamicGraph, compute_level_probs, edge_key

Event = tuple[str, int, int]
MAX_FORWARDED = 3


def capped_delta_prime(m_cap: int, epsilon: float) -> int:
    """``ceil(sqrt(m_cap) / epsilon)``."""
    if not isinstance(m_cap, int) or m_cap < 1:
        raise ParameterError(f"m_cap must be a positive integer, got {m_cap!r}")
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    # math.isqrt keeps perfect squares exact before the division.
    r = math.isqrt(m_cap)
    root = float(r) if r * r == m_cap else math.sqrt(m_cap)
    return math.ceil(root / epsilon)


class MarkedSubgraph:
    """The marking structure and the induced subgraph ``G~``.

    ``sink`` (optional) is called as ``sink(op, u, v)`` for each forwarded
    event, in order.
    """

    def __init__(self, n: int, delta_prime: int, sink: Callable[[str, int, int], object] | None = None):
        if delta_prime < 1:
            raise ParameterError(f"delta_prime must be >= 1, got {delta_prime}")
        self.n = n
        self.delta_prime = delta_prime
        self.sink = sink
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.marked: list[set[int]] = [set() for _ in range(n)]
        self.tilde: set[Edge] = set()
        self.tilde_deg = [0] * n
        self.max_forwarded = 0

    def marks(self, v: int) -> set[int]:
        return self.marked[v]

    def in_tilde(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.tilde

    def tilde_edges(self) -> list[Edge]:
        return sorted(self.tilde)

    def max_tilde_degree(self) -> int:
        return max(self.tilde_deg, default=0)

    def edges(self) -> list[Edge]:
        return sorted(edge_key(u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def _emit(self, out: list[Event], op: str, e: Edge) -> None:
        u, v = e
        if op == "+":
            self.tilde.add(e)
            self.tilde_deg[u] += 1
            self.tilde_deg[v] += 1
        else:
            self.tilde.remove(e)
            self.tilde_deg[u] -= 1
            self.tilde_deg[v] -= 1
        out.append((op, u, v))

    def _try_mark(self, x: int, y: int) -> bool:
        if len(self.marked[x]) < self.delta_prime:
            self.marked[x].add(y)
            return True
        return False

    def insert(self, u: int, v: int) -> list[Event]:
        e = edge_key(u, v)
        u, v = e
        if v in self.adj[u]:
            raise DuplicateEdgeError(f"edge {e} already present")
        self.adj[u].add(v)
        self.adj[v].add(u)
        out: list[Event] = []
        mu_ok = self._try_mark(u, v)
        mv_ok = self._try_mark(v, u)
        if mu_ok and mv_ok:
            self._emit(out, "+", e)
        return out

    def delete(self, u: int, v: int) -> list[Event]:
        e = edge_key(u, v)
        u, v = e
        if v not in self.adj[u]:
            raise MissingEdgeError(f"edge {e} not present")
        out: list[Event] = []
        if e in self.tilde:
            self._emit(out, "-", e)
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        for x, y in ((u, v), (v, u)):
            if y not in self.marked[x]:
                continue
            self.marked[x].discard(y)
            spare = self.adj[x] - self.marked[x]
            if not spare:
                continue
            w = min(spare)
            self.marked[x].add(w)
            if x in self.marked[w]:
                self._emit(out, "+", edge_key(x, w))
        return out

    def apply(self, op: str, u: int, v: int) -> list[Event]:
        if op == "+":
            out = self.insert(u, v)
        elif op == "-":
            out = self.delete(u, v)
        else:
            raise ParameterError(f"unknown event {op!r}")
        self.max_forwarded = max(self.max_forwarded, len(out))
        if self.sink is not None:
            for ev in out:
                self.sink(*ev)
        return out

    def check(self) -> list[str]:
        """Full rescan of the marking invariants; returns problem descriptions."""
        problems = []
        tilde = set()
        for v in range(self.n):
            if len(self.marked[v]) > self.delta_prime:
                problems.append(f"vertex {v} marks {len(self.marked[v])} > {self.delta_prime} edges")
            if not self.marked[v] <= self.adj[v]:
                problems.append(f"vertex {v} marks a non-edge")
            if len(self.marked[v]) < self.delta_prime and self.marked[v] != self.adj[v]:
                problems.append(f"vertex {v} has spare capacity but unmarked edges")
            for w in self.marked[v]:
                if v < w and v in self.marked[w]:
                    tilde.add((v, w))
        if tilde != self.tilde:
            problems.append("G~ differs from the doubly-marked edge set")
        deg = [0] * self.n
        for u, v in tilde:
            deg[u] += 1
            deg[v] += 1
        if max(deg, default=0) > self.delta_prime:
            problems.append(f"G~ has max degree {max(deg)} > {self.delta_prime}")
        return problems


def wrap_update(s: MarkedSubgraph, event: str, e: Edge) -> list[Event]:
    """Apply ``event`` on ``e`` to ``G`` and return the induced ``G~`` events (at most 3)."""
    return s.apply(event, e[0], e[1])


class DegreeCappedEngine:
    """An engine running on ``G~`` behind a :class:`MarkedSubgraph`.

    The inner graph uses ``delta_prime`` as its degree cap, so the level
    probabilities are set from the capped degree instead of the raw one.
    """

    def __init__(
        self,
        n: int,
        k: int,
        beta: int,
        epsilon: float,
        m_cap: int,
        seed: int = 0,
        edges: Iterable[Edge] = (),
        mode: str = AMORTIZED,
        delta_prime: int | None = None,
        **hooks,
    ):
        self.delta_prime = capped_delta_prime(m_cap, epsilon) if delta_prime is None else delta_prime
        self.marks = MarkedSubgraph(n, self.delta_prime)
        initial: list[Edge] = []
        for u, v in edges:
            for op, a, b in self.marks.apply("+", u, v):
                initial.append((a, b))
        # Degree cap on the inner graph is at least 2 so level probabilities are defined.
        cap = max(2, self.delta_prime)
        params = compute_level_probs(k, epsilon, cap)
        g = RankedDynamicGraph(n, cap, m_cap, params, seed)
        for a, b in initial:
            g.insert_edge(a, b)
        self.engine = Hedcs.preprocess(g, k, beta, epsilon, mode, **hooks)
        self.last_forwarded: list[Event] = []

    @property
    def matching(self):
        return self.engine.matching

    @property
    def graph(self) -> RankedDynamicGraph:
        return self.engine.g

    def apply_update(self, op: str, u: int, v: int) -> tuple[list[Event], list[UpdateReport]]:
        forwarded = self.marks.apply(op, u, v)
        self.last_forwarded = forwarded
        reports = [self.engine.apply_update(o, a, b) for o, a, b in forwarded]
        return forwarded, reports
