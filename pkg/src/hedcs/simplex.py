"""Dense two-phase primal simplex for ``min c.x  s.t.  A x = b, x >= 0``.

Small and self-contained: the factor-revealing LPs solved at desk scale have a
few hundred rows and a few thousand columns.  Dantzig pricing is used until the
method stalls on degenerate pivots, after which Bland's rule guarantees
termination.  The final primal point is re-solved from the optimal basis
against the original matrix to shed accumulated tableau error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration-limit"


@dataclass
class SimplexResult:
    status: str
    x: np.ndarray | None
    objective: float | None
    iterations: int
    basis: list[int] | None = None
    residual: float | None = None


class _Tableau:
    def __init__(self, T: np.ndarray, basis: list[int], tol: float, stall: int):
        self.T = T
        self.basis = basis
        self.tol = tol
        self.stall = stall
        self.iterations = 0

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        nz = np.nonzero(np.abs(col) > 0.0)[0]
        if nz.size:
            T[nz] -= np.outer(col[nz], T[r])
        self.basis[r] = j
        self.iterations += 1

    def run(self, ncols: int, max_iter: int) -> str:
        """Optimise the objective in the last row over the first ``ncols`` columns."""
        T, tol = self.T, self.tol
        m = T.shape[0] - 1
        degenerate = 0
        while self.iterations < max_iter:
            red = T[-1, :ncols]
            if degenerate >= self.stall:
                cand = np.nonzero(red < -tol)[0]
                if cand.size == 0:
                    return OPTIMAL
                j = int(cand[0])
            else:
                j = int(np.argmin(red))
                if red[j] >= -tol:
                    return OPTIMAL
            col = T[:m, j]
            pos = np.nonzero(col > tol)[0]
            if pos.size == 0:
                return UNBOUNDED
            ratios = T[pos, -1] / col[pos]
            best = ratios.min()
            ties = pos[ratios <= best + tol * max(1.0, abs(best))]
            r = int(min(ties, key=lambda i: self.basis[i]))
            degenerate = degenerate + 1 if T[r, -1] <= tol else 0
            self.pivot(r, j)
        return ITERATION_LIMIT


def solve(
    c: np.ndarray,
    A: np.ndarray,
    b: np.ndarray,
    tol: float = 1e-9,
    max_iter: int = 200_000,
    stall: int = 50,
) -> SimplexResult:
    c = np.asarray(c, dtype=float)
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # Phase 1: artificial identity basis.
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    tab = _Tableau(T, list(range(n, n + m)), tol, stall)
    status = tab.run(n + m, max_iter)
    if status == ITERATION_LIMIT:
        return SimplexResult(status, None, None, tab.iterations)
    if -T[-1, -1] > tol * max(1.0, float(np.abs(b).max(initial=0.0))) * 10:
        return SimplexResult(INFEASIBLE, None, None, tab.iterations)

    # Drive remaining artificials out of the basis; drop redundant rows.
    keep = []
    for r in range(m):
        if tab.basis[r] >= n:
            row = T[r, :n]
            nz = np.nonzero(np.abs(row) > 1e-7)[0]
            if nz.size:
                tab.pivot(r, int(nz[np.argmax(np.abs(row[nz]))]))
                keep.append(r)
        else:
            keep.append(r)
    rows = keep + [m]
    T2 = np.hstack([T[rows, :n], T[rows, -1:]])
    basis = [tab.basis[r] for r in keep]

    # Phase 2.
    T2[-1, :] = 0.0
    T2[-1, :n] = c
    for i, j in enumerate(basis):
        if c[j] != 0.0:
            T2[-1] -= c[j] * T2[i]
    tab2 = _Tableau(T2, basis, tol, stall)
    tab2.iterations = tab.iterations
    status = tab2.run(n, max_iter)
    if status != OPTIMAL:
        return SimplexResult(status, None, None, tab2.iterations)

    x = np.zeros(n)
    x[basis] = T2[:-1, -1]
    # Refine from the basis against the original rows.
    B = A[:, basis]
    sol, *_ = np.linalg.lstsq(B, b, rcond=None)
    refined = np.zeros(n)
    refined[basis] = sol
    if np.all(refined >= -1e-9) and np.abs(A @ refined - b).max(initial=0.0) <= np.abs(A @ x - b).max(initial=0.0):
        x = refined
    x[np.abs(x) < 1e-13] = 0.0
    x = np.maximum(x, 0.0)
    residual = float(np.abs(A @ x - b).max(initial=0.0))
    return SimplexResult(OPTIMAL, x, float(c @ x), tab2.iterations, basis, residual)
