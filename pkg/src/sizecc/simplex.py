"""Two-phase primal simplex on a dense tableau with Bland's pivoting rule."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .instance import WeightedInstance
from .lp import GE, LE, LpProblem, LpSolution, build_lp, solution_from_vector

log = logging.getLogger(__name__)


class SimplexError(RuntimeError):
    pass


class IterationLimit(SimplexError):
    pass


class Infeasible(SimplexError):
    pass


class Unbounded(SimplexError):
    pass


@dataclass(frozen=True)
class SimplexConfig:
    max_iterations: int = 200_000
    eps_pivot: float = 1e-9
    eps_feas: float = 1e-7
    pivot_rule: str = "bland"

    def __post_init__(self):
        if self.max_iterations <= 0:
            raise ValueError("max_iterations must be positive")
        if self.eps_pivot <= 0 or self.eps_feas <= 0:
            raise ValueError("tolerances must be positive")
        if self.pivot_rule != "bland":
            raise ValueError("only Bland's rule is supported")


@dataclass
class _Tableau:
    T: np.ndarray          # rows 0..m-1 constraints, row m objective; last column rhs
    basis: np.ndarray      # basic column per constraint row
    iterations: int = 0


_SNAP = 1e-11


def _pivot(tab: _Tableau, r: int, j: int) -> None:
    T = tab.T
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    # snap round-off on degenerate rows so Bland's tie-break stays consistent
    rhs = T[:-1, -1]
    rhs[np.abs(rhs) < _SNAP] = 0.0
    tab.basis[r] = j
    tab.iterations += 1


def _run(tab: _Tableau, ncols: int, cfg: SimplexConfig) -> None:
    """Iterate until optimal over the first ``ncols`` columns."""
    T = tab.T
    m = T.shape[0] - 1
    eps = cfg.eps_pivot
    while True:
        if tab.iterations >= cfg.max_iterations:
            raise IterationLimit(f"no convergence after {tab.iterations} pivots")
        # Bland: lowest-index column with negative reduced cost
        neg = np.flatnonzero(T[m, :ncols] < -eps)
        if neg.size == 0:
            return
        j = neg[0]
        col = T[:m, j]
        rows = np.flatnonzero(col > eps)
        if rows.size == 0:
            raise Unbounded(f"column {j} unbounded")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + eps * max(1.0, abs(best))]
        # Bland: among tied rows, the one whose basic variable has lowest index
        r = tied[np.argmin(tab.basis[tied])]
        _pivot(tab, r, j)


def solve_standard(c, A, b, senses, cfg: SimplexConfig = SimplexConfig()):
    """Minimize ``c @ z`` subject to ``A z (<=|>=) b`` and ``z >= 0``.

    Returns ``(z, iterations)``.  The final basic solution is recomputed
    from the original data with a direct solve to shed accumulated
    round-off from the tableau updates.
    """
    c = np.asarray(c, dtype=float)
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, nv = A.shape
    senses = list(senses)

    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1
    senses = [(GE if s == LE else LE) if f else s for s, f in zip(senses, flip)]

    n_slack = m
    art_rows = [i for i, s in enumerate(senses) if s == GE]
    n_art = len(art_rows)
    ncols = nv + n_slack + n_art
    # columns: structural | slack/surplus | artificial | rhs
    T = np.zeros((m + 1, ncols + 1))
    T[:m, :nv] = A
    basis = np.empty(m, dtype=int)
    for i, s in enumerate(senses):
        T[i, nv + i] = 1.0 if s == LE else -1.0
        basis[i] = nv + i
    for k, i in enumerate(art_rows):
        T[i, nv + n_slack + k] = 1.0
        basis[i] = nv + n_slack + k
    T[:m, -1] = b
    tab = _Tableau(T, basis)
    full = np.hstack([A, np.zeros((m, n_slack + n_art))])
    for i, s in enumerate(senses):
        full[i, nv + i] = 1.0 if s == LE else -1.0
    for k, i in enumerate(art_rows):
        full[i, nv + n_slack + k] = 1.0

    if n_art:
        # phase 1: minimize the sum of artificials
        T[m, :] = 0.0
        T[m, nv + n_slack:ncols] = 1.0
        for i in art_rows:
            T[m] -= T[i]
        _run(tab, ncols, cfg)
        if -T[m, -1] > cfg.eps_feas:
            raise Infeasible(f"phase 1 optimum {-T[m, -1]:g} > 0")
        # drive remaining artificials out of the basis
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if tab.basis[r] >= nv + n_slack:
                cand = np.flatnonzero(np.abs(T[r, :nv + n_slack]) > cfg.eps_pivot)
                if cand.size:
                    _pivot(tab, r, cand[0])
                else:
                    keep[r] = False
        if not keep.all():
            log.debug("dropping %d redundant rows", int((~keep).sum()))
            T = np.vstack([T[:m][keep], T[m:]])
            tab.T = T
            tab.basis = tab.basis[keep]
            full = full[keep]
            b = b[keep]
            m = T.shape[0] - 1
        T = tab.T = np.delete(T, np.s_[nv + n_slack:ncols], axis=1)
        full = full[:, :nv + n_slack]
        ncols = nv + n_slack

    cost = np.zeros(ncols)
    cost[:nv] = c
    T[m, :ncols] = cost
    T[m, -1] = 0.0
    for r in range(m):
        j = tab.basis[r]
        if cost[j] != 0.0:
            T[m] -= cost[j] * T[r]
    _run(tab, ncols, cfg)

    z = np.zeros(ncols)
    B = full[:, tab.basis]
    try:
        z[tab.basis] = np.linalg.solve(B, b)
    except np.linalg.LinAlgError:
        z[tab.basis] = T[:m, -1]
    return z[:nv], tab.iterations


def solve(problem: LpProblem, config: SimplexConfig = SimplexConfig()) -> LpSolution:
    """Solve the correlation-clustering LP to optimality.

    Boxed variables are complemented (``x = u - s``) so that the all-upper
    point, every pair separated, is the starting vertex.  On these LPs that
    start is feasible for the triangle rows and keeps the run short.  The
    box itself becomes explicit ``<=`` rows.  Bound overshoots from round-off
    smaller than ``eps_feas`` are clipped back into the box.
    """
    if np.any(problem.lower != 0):
        raise ValueError("only zero lower bounds are supported")
    A, b, senses = problem.dense()
    c = problem.objective.astype(float).copy()
    boxed = np.flatnonzero(np.isfinite(problem.upper))
    if boxed.size:
        ub = problem.upper[boxed]
        b = b - A[:, boxed] @ ub
        A = A.copy()
        A[:, boxed] *= -1.0
        c[boxed] *= -1.0
        extra = np.zeros((boxed.size, problem.num_vars))
        extra[np.arange(boxed.size), boxed] = 1.0
        A = np.vstack([A, extra])
        b = np.concatenate([b, ub])
        senses = senses + [LE] * boxed.size
    z, its = solve_standard(c, A, b, senses, config)
    z[boxed] = problem.upper[boxed] - z[boxed]
    lo, hi = problem.lower, problem.upper
    z = np.where((z < lo) & (z > lo - config.eps_feas), lo, z)
    z = np.where((z > hi) & (z < hi + config.eps_feas), hi, z)
    log.debug("simplex finished in %d pivots", its)
    return solution_from_vector(problem, z)


def solve_instance(instance: WeightedInstance,
                   config: SimplexConfig = SimplexConfig()) -> LpSolution:
    return solve(build_lp(instance), config)
