"""Matching containers and the static/dynamic matching subroutines.

Three routines live here:

* :func:`maximum_matching_exact` -- Edmonds' blossom algorithm, used as the
  verification oracle for ``mu(G)``.
* :func:`approx_max_matching` -- a ``(1 - eps)``-approximate matching.  It runs
  the same blossom augmentation but stops as soon as a counting certificate
  proves the ratio (see the function docstring).
* :class:`MaximalMatchingMaintainer` -- a deterministic dynamic maximal
  matching with ``O(deg)`` work per deletion of a matched edge.  It replaces
  the poly-log worst-case maintainers from the literature; the engine only
  needs an O(1)-approximation of ``mu(G_i)``.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator, Sequence

from .errors import GraphError, ParameterError, SizeExceededError
from .graph import Edge, edge_key

DEFAULT_ORACLE_VERTEX_BOUND = 2000


class Matching:
    """Vertex-disjoint edge set with O(1) partner lookup."""

    __slots__ = ("mate", "size")

    def __init__(self, n: int):
        self.mate = [-1] * n
        self.size = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Matching":
        m = cls(n)
        for u, v in edges:
            m.add(u, v)
        return m

    @classmethod
    def from_mates(cls, mate: Sequence[int]) -> "Matching":
        m = cls(len(mate))
        m.mate = list(mate)
        m.size = sum(1 for v, w in enumerate(mate) if w > v)
        return m

    @property
    def n(self) -> int:
        return len(self.mate)

    def partner(self, v: int) -> int | None:
        w = self.mate[v]
        return None if w < 0 else w

    def is_free(self, v: int) -> bool:
        return self.mate[v] < 0

    def add(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"cannot match vertex {u} with itself")
        if self.mate[u] >= 0 or self.mate[v] >= 0:
            raise GraphError(f"({u}, {v}) conflicts with an existing matched edge")
        self.mate[u] = v
        self.mate[v] = u
        self.size += 1

    def remove(self, u: int, v: int) -> None:
        if self.mate[u] != v:
            raise GraphError(f"({u}, {v}) is not in the matching")
        self.mate[u] = -1
        self.mate[v] = -1
        self.size -= 1

    def discard(self, u: int, v: int) -> bool:
        if self.mate[u] == v:
            self.remove(u, v)
            return True
        return False

    def edges(self) -> Iterator[Edge]:
        for v, w in enumerate(self.mate):
            if w > v:
                yield (v, w)

    def copy(self) -> "Matching":
        m = Matching(0)
        m.mate = list(self.mate)
        m.size = self.size
        return m

    def __contains__(self, e: object) -> bool:
        u, v = e  # type: ignore[misc]
        return 0 <= u < len(self.mate) and self.mate[u] == v

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[Edge]:
        return self.edges()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self.mate == other.mate

    def __repr__(self) -> str:
        return f"Matching(size={self.size})"


def is_matching_of(m: Matching, view) -> bool:
    """True iff every matched pair is an edge of ``view`` and mates are symmetric."""
    for v, w in enumerate(m.mate):
        if w < 0:
            continue
        if m.mate[w] != v or not view.has_edge(v, w):
            return False
    return True


# --- Edmonds' blossom algorithm ------------------------------------------------


def _adjacency(n: int, edges: Iterable[Edge]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    return adj


def _greedy(adj: list[list[int]], mate: list[int]) -> int:
    work = 0
    for u, nbrs in enumerate(adj):
        if mate[u] >= 0:
            continue
        for v in nbrs:
            work += 1
            if mate[v] < 0:
                mate[u] = v
                mate[v] = u
                break
    return work


def _augment_once(adj: list[list[int]], mate: list[int]) -> tuple[bool, int]:
    """Grow an alternating forest rooted at every free vertex.

    Returns ``(augmented, edge_visits)``.  When no augmenting path exists the
    matching is maximum.
    """
    n = len(adj)
    base = list(range(n))
    parent = [-1] * n
    outer = [False] * n
    root = [-1] * n
    members: dict[int, list[int]] = {}
    queue: deque[int] = deque()
    for v in range(n):
        if mate[v] < 0 and adj[v]:
            outer[v] = True
            root[v] = v
            members[v] = [v]
            queue.append(v)
    work = 0

    def lca(a: int, b: int) -> int:
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] < 0:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: set[int]) -> None:
        while base[v] != b:
            blossom.add(base[v])
            blossom.add(base[mate[v]])
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def flip(x: int, y: int) -> None:
        while True:
            old = mate[x]
            mate[x] = y
            if old < 0:
                return
            z = parent[old]
            mate[old] = z
            x, y = z, old

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            work += 1
            if base[v] == base[to] or mate[v] == to:
                continue
            if outer[to]:
                if root[to] != root[v]:
                    flip(v, to)
                    flip(to, v)
                    return True, work
                b = lca(v, to)
                blossom: set[int] = set()
                mark_path(v, b, to, blossom)
                mark_path(to, b, v, blossom)
                for i in members[root[v]]:
                    if base[i] in blossom:
                        base[i] = b
                        if not outer[i]:
                            outer[i] = True
                            queue.append(i)
            elif parent[to] < 0:
                # Every free non-isolated vertex is a root, so `to` is matched.
                parent[to] = v
                r = root[v]
                w = mate[to]
                root[to] = root[w] = r
                members[r].append(to)
                members[r].append(w)
                outer[w] = True
                queue.append(w)
    return False, work


def _solve(adj: list[list[int]], mate: list[int], epsilon: float | None) -> int:
    """Augment ``mate`` in place; exact when ``epsilon`` is None."""
    work = 0
    while True:
        if epsilon is not None:
            size = sum(1 for v, w in enumerate(mate) if w > v)
            free = sum(1 for v in range(len(adj)) if mate[v] < 0 and adj[v])
            # Every augmenting path consumes two free non-isolated vertices,
            # so mu <= size + free // 2.
            if size >= (1.0 - epsilon) * (size + free // 2):
                return work
        found, w = _augment_once(adj, mate)
        work += w
        if not found:
            return work


def maximum_matching_exact(view, max_vertices: int = DEFAULT_ORACLE_VERTEX_BOUND) -> Matching:
    """Maximum-cardinality matching of a general graph (Edmonds' blossoms).

    ``view`` needs ``n`` and ``edges()``.  Raises :class:`SizeExceededError`
    when ``view.n`` is above ``max_vertices``.
    """
    n = view.n
    if n > max_vertices:
        raise SizeExceededError(f"exact oracle limited to {max_vertices} vertices, got {n}")
    adj = _adjacency(n, view.edges())
    mate = [-1] * n
    _greedy(adj, mate)
    _solve(adj, mate, None)
    return Matching.from_mates(mate)


def approx_max_matching(view, epsilon: float, initial: Matching | None = None) -> Matching:
    """A matching of size at least ``(1 - epsilon) * mu(view)``.

    Starts from ``initial`` (restricted to edges of ``view``) or a greedy
    maximal matching, then runs blossom augmentations.  Between augmentations
    it checks ``|M| >= (1 - eps) * (|M| + F // 2)`` where ``F`` counts free
    non-isolated vertices; the right-hand side bounds ``mu`` from above, so the
    loop may stop early with the guarantee already certified.
    """
    matching, _ = approx_max_matching_with_work(view.n, view.edges(), epsilon, initial)
    return matching


def approx_max_matching_with_work(
    n: int, edges: Iterable[Edge], epsilon: float, initial: Matching | None = None
) -> tuple[Matching, int]:
    """Same as :func:`approx_max_matching`, also returning edge visits."""
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    edges = list(edges)
    adj = _adjacency(n, edges)
    mate = [-1] * n
    work = len(edges)
    if initial is not None:
        for u, v in initial.edges():
            if mate[u] < 0 and mate[v] < 0 and _has(adj, u, v):
                mate[u] = v
                mate[v] = u
    work += _greedy(adj, mate)
    work += _solve(adj, mate, epsilon)
    return Matching.from_mates(mate), work


def _has(adj: list[list[int]], u: int, v: int) -> bool:
    a = adj[u]
    if len(a) > len(adj[v]):
        a, u, v = adj[v], v, u
    i = _bisect(a, v)
    return i < len(a) and a[i] == v


def _bisect(a: list[int], x: int) -> int:
    lo, hi = 0, len(a)
    while lo < hi:
        mid = (lo + hi) // 2
        if a[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def augmenting_path_bound(epsilon: float) -> int:
    """Length cutoff ``2*ceil(1/eps) - 1`` of the classical phase argument."""
    return 2 * math.ceil(1.0 / epsilon) - 1


# --- dynamic maximal matching -----------------------------------------------------


class MaximalMatchingMaintainer:
    """Keeps a maximal matching of one graph view under edge updates.

    The caller applies each update to the underlying graph first and then
    forwards it here.  On deletion of a matched edge each freed endpoint scans
    its neighbours in ascending id order for a free partner.
    """

    def __init__(self, view, build: bool = True):
        self.view = view
        self.matching = Matching(view.n)
        self.last_work = 0
        if build:
            self.rebuild()

    @property
    def size(self) -> int:
        return self.matching.size

    def rebuild(self) -> int:
        m = Matching(self.view.n)
        work = 0
        for u, v in self.view.edges():
            work += 1
            if m.mate[u] < 0 and m.mate[v] < 0:
                m.add(u, v)
        self.matching = m
        self.last_work = work
        return work

    def insert(self, u: int, v: int) -> int:
        if not self.view.has_edge(u, v):
            raise GraphError(f"insert of ({u}, {v}) not reflected in the view")
        mate = self.matching.mate
        if mate[u] < 0 and mate[v] < 0:
            self.matching.add(u, v)
        self.last_work = 1
        return self.matching.size

    def delete(self, u: int, v: int) -> int:
        if self.view.has_edge(u, v):
            raise GraphError(f"delete of ({u}, {v}) not reflected in the view")
        work = 1
        if self.matching.discard(u, v):
            work += self._rematch(u)
            work += self._rematch(v)
        self.last_work = work
        return self.matching.size

    def apply(self, op: str, u: int, v: int) -> int:
        if op == "+":
            return self.insert(u, v)
        if op == "-":
            return self.delete(u, v)
        raise ParameterError(f"unknown event {op!r}")

    def _rematch(self, x: int) -> int:
        mate = self.matching.mate
        nbrs = sorted(self.view.neighbors(x))
        for i, w in enumerate(nbrs, start=1):
            if mate[w] < 0:
                self.matching.add(x, w)
                return i
        return len(nbrs)

    def is_maximal(self) -> bool:
        mate = self.matching.mate
        return all(mate[u] >= 0 or mate[v] >= 0 for u, v in self.view.edges())


def canonical_edges(edges: Iterable[Edge]) -> set[Edge]:
    return {edge_key(u, v) for u, v in edges}
