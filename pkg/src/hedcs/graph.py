"""Dynamic graph substrate with persistent 64-bit edge ranks.

Every edge gets a rank drawn once on insertion.  The rank decides which of the
nested sampled subgraphs ``G_1 <= G_2 <= ... <= G_{k+1} = G`` the edge belongs
to: ``e`` is in ``G_i`` iff ``rank(e) < thresholds[i-1]``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DegreeCapError,
    DuplicateEdgeError,
    EdgeCapError,
    MissingEdgeError,
    ParameterError,
)

Edge = tuple[int, int]

RANK_BITS = 64
RANK_SPACE = 1 << RANK_BITS


def edge_key(u: int, v: int) -> Edge:
    """Canonical undirected key ``(min, max)``; rejects self-loops."""
    if u == v:
        raise ParameterError(f"self-loop ({u}, {v}) is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LevelParams:
    k: int
    epsilon: float
    delta_cap: int
    probs: tuple[float, ...]
    thresholds: tuple[int, ...]

    @property
    def levels(self) -> int:
        """Number of sampled subgraphs, ``k + 1``."""
        return self.k + 1

    def threshold(self, i: int) -> int:
        return self.thresholds[i - 1]

    def prob(self, i: int) -> float:
        return self.probs[i - 1]


def compute_level_probs(k: int, epsilon: float, delta_cap: int) -> LevelParams:
    """Sampling probabilities ``p_i = min(1, eps * delta^(i/(k+1) - 1))``.

    ``p_{k+1}`` is always exactly 1.  Thresholds are ``floor(p_i * 2**64)`` so
    that membership tests are exact integer comparisons.
    """
    if not isinstance(k, int) or k < 0:
        raise ParameterError(f"k must be a non-negative integer, got {k!r}")
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not isinstance(delta_cap, int) or delta_cap < 2:
        raise ParameterError(f"delta_cap must be an integer >= 2, got {delta_cap!r}")
    probs = [min(1.0, epsilon * delta_cap ** (i / (k + 1) - 1.0)) for i in range(1, k + 1)]
    probs.append(1.0)
    # p_i * 2**64 is an exact float scaling, so int() is an exact floor.
    thresholds = tuple(min(RANK_SPACE, int(math.ldexp(p, RANK_BITS))) for p in probs)
    return LevelParams(k, float(epsilon), delta_cap, tuple(probs), thresholds)


class RankedDynamicGraph:
    """Fully dynamic simple graph on the fixed vertex set ``range(n)``.

    Parameters
    ----------
    n : int
        Number of vertices.
    delta_cap, m_cap : int
        Upper bounds on the maximum degree and the number of edges.  Updates
        that would exceed them raise instead of being dropped.
    params : LevelParams
        Level thresholds used by :meth:`level_of` and :meth:`view`.
    seed : int
        Seed of the rank stream.  It is separate from any trace generator seed.
    """

    def __init__(self, n: int, delta_cap: int, m_cap: int, params: LevelParams, seed: int = 0):
        if n < 1:
            raise ParameterError(f"n must be positive, got {n}")
        if m_cap < 0:
            raise ParameterError(f"m_cap must be non-negative, got {m_cap}")
        self.n = n
        self.delta_cap = delta_cap
        self.m_cap = m_cap
        self.params = params
        self.seed = seed
        self._rng = random.Random(seed)
        self.adj: list[dict[int, int]] = [{} for _ in range(n)]
        self.edge_count = 0

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ParameterError(f"vertex {v} outside [0, {self.n})")

    def insert_edge(self, u: int, v: int) -> int:
        """Insert ``(u, v)`` and return its freshly drawn rank."""
        self._check_vertex(u)
        self._check_vertex(v)
        u, v = edge_key(u, v)
        au, av = self.adj[u], self.adj[v]
        if v in au:
            raise DuplicateEdgeError(f"edge ({u}, {v}) already present")
        if len(au) >= self.delta_cap or len(av) >= self.delta_cap:
            raise DegreeCapError(f"inserting ({u}, {v}) exceeds delta_cap={self.delta_cap}")
        if self.edge_count >= self.m_cap:
            raise EdgeCapError(f"inserting ({u}, {v}) exceeds m_cap={self.m_cap}")
        rank = self._rng.getrandbits(RANK_BITS)
        au[v] = rank
        av[u] = rank
        self.edge_count += 1
        return rank

    def delete_edge(self, u: int, v: int) -> int:
        """Remove ``(u, v)`` and return the rank it carried."""
        self._check_vertex(u)
        self._check_vertex(v)
        u, v = edge_key(u, v)
        rank = self.adj[u].pop(v, None)
        if rank is None:
            raise MissingEdgeError(f"edge ({u}, {v}) not present")
        del self.adj[v][u]
        self.edge_count -= 1
        return rank

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def rank(self, u: int, v: int) -> int:
        try:
            return self.adj[u][v]
        except KeyError:
            raise MissingEdgeError(f"edge ({u}, {v}) not present") from None

    def level_of_rank(self, rank: int) -> int:
        for i, t in enumerate(self.params.thresholds, start=1):
            if rank < t:
                return i
        raise AssertionError("p_{k+1} = 1 admits every rank")

    def level_of(self, u: int, v: int) -> int:
        """Smallest ``i`` with ``e`` in ``G_i``."""
        return self.level_of_rank(self.rank(u, v))

    def in_level(self, u: int, v: int, i: int) -> bool:
        r = self.adj[u].get(v)
        return r is not None and r < self.params.thresholds[i - 1]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> Iterable[int]:
        return self.adj[v].keys()

    def edges(self) -> Iterator[Edge]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def ranked_edges(self) -> Iterator[tuple[int, Edge]]:
        for u, nbrs in enumerate(self.adj):
            for v, r in nbrs.items():
                if u < v:
                    yield r, (u, v)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def view(self, i: int) -> "LevelView":
        """Read-only view of the sampled subgraph ``G_i``."""
        if not 1 <= i <= self.params.levels:
            raise ParameterError(f"level {i} outside [1, {self.params.levels}]")
        return LevelView(self, i)

    def __len__(self) -> int:
        return self.edge_count

    def __repr__(self) -> str:
        return f"RankedDynamicGraph(n={self.n}, m={self.edge_count}, k={self.params.k})"


class LevelView:
    """The edges of a :class:`RankedDynamicGraph` with rank below one threshold."""

    def __init__(self, graph: RankedDynamicGraph, level: int):
        self.graph = graph
        self.level = level
        self.n = graph.n
        self._t = graph.params.thresholds[level - 1]

    def has_edge(self, u: int, v: int) -> bool:
        r = self.graph.adj[u].get(v)
        return r is not None and r < self._t

    def neighbors(self, v: int) -> Iterator[int]:
        t = self._t
        return (w for w, r in self.graph.adj[v].items() if r < t)

    def degree(self, v: int) -> int:
        t = self._t
        return sum(1 for r in self.graph.adj[v].values() if r < t)

    def edges(self) -> Iterator[Edge]:
        t = self._t
        for r, e in self.graph.ranked_edges():
            if r < t:
                yield e


class EdgeSetView:
    """Adapter exposing an explicit edge collection through the view protocol."""

    def __init__(self, n: int, edges: Iterable[Edge]):
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self._edges: set[Edge] = set()
        for u, v in edges:
            e = edge_key(u, v)
            if e in self._edges:
                continue
            self._edges.add(e)
            self.adj[e[0]].add(e[1])
            self.adj[e[1]].add(e[0])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> Iterable[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterator[Edge]:
        return iter(sorted(self._edges))

    def __len__(self) -> int:
        return len(self._edges)


def edge_degree(view, e: Edge) -> int:
    """``deg(u) + deg(v)`` in ``view``; ``e`` itself need not be present.

    ``view`` is anything with a ``degree(v)`` method, or a plain iterable of
    edges (degrees are then counted on the fly).
    """
    u, v = e
    if hasattr(view, "degree"):
        return view.degree(u) + view.degree(v)
    d = 0
    for a, b in view:
        d += (a == u) + (b == u) + (a == v) + (b == v)
    return d
