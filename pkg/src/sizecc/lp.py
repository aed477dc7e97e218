"""The size-penalized correlation-clustering LP.

Variables are ``x_uv`` in ``[0, 1]`` for every unordered pair (1 means
"separated") and ``y_u >= 0`` for every vertex (overflow of the cluster of
``u`` beyond ``K + 1``).  The objective is

    sum_e  wplus_e x_e + wminus_e (1 - x_e)  +  sum_v mu_v y_v

subject to the triangle inequalities ``x_uv <= x_uz + x_zv`` and the size
rows ``sum_{v != u} (1 - x_uv) <= K + y_u``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .instance import Clustering, WeightedInstance, validate_weighted

LE = "<="
GE = ">="
DEFAULT_EPS = 1e-7


@dataclass(frozen=True)
class Row:
    coeffs: tuple[tuple[int, float], ...]
    sense: str
    rhs: float


@dataclass(frozen=True, eq=False)
class LpProblem:
    n: int
    objective: np.ndarray
    constant: float
    rows: tuple[Row, ...]
    lower: np.ndarray
    upper: np.ndarray
    x_index: dict
    y_index: tuple[int, ...]

    @property
    def num_vars(self) -> int:
        return self.objective.shape[0]

    def dense(self) -> tuple[np.ndarray, np.ndarray, list[str]]:
        """Constraint matrix, right-hand sides and senses as dense arrays."""
        A = np.zeros((len(self.rows), self.num_vars))
        b = np.empty(len(self.rows))
        for i, row in enumerate(self.rows):
            for j, a in row.coeffs:
                A[i, j] += a
            b[i] = row.rhs
        return A, b, [row.sense for row in self.rows]

    def var_name(self, j: int) -> str:
        if j >= len(self.x_index):
            return f"y_{self.y_index.index(j)}"
        for (u, v), k in self.x_index.items():
            if k == j:
                return f"x_{u}_{v}"
        raise IndexError(j)

    def dump(self) -> str:
        """Row-per-line text listing, for cross-checking with other solvers.

        ``min: <const> + <coef> <var> ...`` then one line per constraint
        ``<coef> <var> ... <sense> <rhs>`` then ``bounds: <lo> <= <var> <= <hi>``.
        """
        names = [self.var_name(j) for j in range(self.num_vars)]
        lines = ["min: " + " ".join([repr(self.constant)] + [
            f"+ {c!r} {names[j]}" for j, c in enumerate(self.objective) if c != 0])]
        for row in self.rows:
            terms = " ".join(f"{a:+g} {names[j]}" for j, a in row.coeffs)
            lines.append(f"{terms} {row.sense} {row.rhs:g}")
        for j in range(self.num_vars):
            lines.append(f"bounds: {self.lower[j]:g} <= {names[j]} <= {self.upper[j]:g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class LpSolution:
    """A point of the LP: symmetric ``x`` with zero diagonal, ``y`` per vertex."""

    x: np.ndarray
    y: np.ndarray
    objective: float

    @property
    def n(self) -> int:
        return self.y.shape[0]

    def vector(self, problem: LpProblem) -> np.ndarray:
        z = np.zeros(problem.num_vars)
        for (u, v), j in problem.x_index.items():
            z[j] = self.x[u, v]
        for u, j in enumerate(problem.y_index):
            z[j] = self.y[u]
        return z


def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(itertools.combinations(range(n), 2))}


def build_lp(instance: WeightedInstance) -> LpProblem:
    report = validate_weighted(instance)
    if not report.ok:
        raise ValueError("instance violates the weight assumptions: "
                         + "; ".join(str(v) for v in report.violations[:5]))
    n = instance.n
    xi = pair_index(n)
    m = len(xi)
    yi = tuple(range(m, m + n))

    def X(u, v):
        return xi[(u, v) if u < v else (v, u)]

    c = np.zeros(m + n)
    constant = 0.0
    for (u, v), j in xi.items():
        c[j] = instance.wplus[u, v] - instance.wminus[u, v]
        constant += instance.wminus[u, v]
    c[m:] = instance.mu

    rows = []
    # x_uv - x_uz - x_zv <= 0, one row per choice of the middle vertex z
    for a, b, d in itertools.combinations(range(n), 3):
        for u, v, z in ((a, b, d), (a, d, b), (b, d, a)):
            rows.append(Row(((X(u, v), 1.0), (X(u, z), -1.0), (X(z, v), -1.0)), LE, 0.0))
    # sum_{v != u} (1 - x_uv) <= K + y_u
    for u in range(n):
        coeffs = tuple(sorted((X(u, v), -1.0) for v in range(n) if v != u))
        rows.append(Row(coeffs + ((yi[u], -1.0),), LE, float(instance.K - (n - 1))))

    lower = np.zeros(m + n)
    upper = np.concatenate([np.ones(m), np.full(n, np.inf)])
    for arr in (c, lower, upper):
        arr.setflags(write=False)
    return LpProblem(n, c, constant, tuple(rows), lower, upper, xi, yi)


def lp_objective(instance: WeightedInstance, x: np.ndarray, y: np.ndarray) -> float:
    iu = np.triu_indices(instance.n, 1)
    xe = x[iu]
    edges = instance.wplus[iu] * xe + instance.wminus[iu] * (1.0 - xe)
    return float(edges.sum() + np.dot(instance.mu, y))


def make_solution(instance: WeightedInstance, x, y) -> LpSolution:
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    np.fill_diagonal(x, 0.0)
    x.setflags(write=False)
    y.setflags(write=False)
    return LpSolution(x, y, lp_objective(instance, x, y))


def solution_from_vector(problem: LpProblem, z) -> LpSolution:
    """Unpack a flat variable vector; objective is ``constant + c @ z``."""
    z = np.asarray(z, dtype=float)
    n = problem.n
    x = np.zeros((n, n))
    for (u, v), j in problem.x_index.items():
        x[u, v] = x[v, u] = z[j]
    y = z[list(problem.y_index)].copy()
    x.setflags(write=False)
    y.setflags(write=False)
    return LpSolution(x, y, float(problem.constant + problem.objective @ z))


def lp_cost_of_edge(instance: WeightedInstance, solution: LpSolution, pair) -> float:
    u, v = pair
    xe = solution.x[u, v]
    return float(instance.wplus[u, v] * xe + instance.wminus[u, v] * (1.0 - xe))


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    violations: tuple[str, ...]

    def __bool__(self):
        return self.feasible


def check_feasible(instance: WeightedInstance, solution: LpSolution,
                   eps: float = DEFAULT_EPS) -> FeasibilityReport:
    n = instance.n
    x, y = solution.x, solution.y
    bad = []
    for u, v in instance.pairs():
        if not (-eps <= x[u, v] <= 1 + eps):
            bad.append(f"bound 0 <= x_{u}_{v} <= 1 (x = {x[u, v]:g})")
        if x[u, v] != x[v, u]:
            bad.append(f"x_{u}_{v} not symmetric")
    for u in range(n):
        if y[u] < -eps:
            bad.append(f"bound y_{u} >= 0 (y = {y[u]:g})")
    if n >= 3:
        # excess[u, z, v] = x_uv - x_uz - x_zv
        excess = x[:, None, :] - x[:, :, None] - x[None, :, :]
        for u, z, v in np.argwhere(excess > eps):
            if u < v and z != u and z != v:
                bad.append(f"triangle x_{u}_{v} <= x_{u}_{z} + x_{z}_{v} "
                           f"(excess {excess[u, z, v]:g})")
    for u in range(n):
        lhs = float(np.sum(1.0 - x[u])) - 1.0  # drop the v = u term
        if lhs > instance.K + y[u] + eps:
            bad.append(f"size row of vertex {u}: {lhs:g} > {instance.K} + {y[u]:g}")
    return FeasibilityReport(not bad, tuple(bad))


def integer_solution_from_clustering(instance: WeightedInstance,
                                     clustering: Clustering) -> LpSolution:
    if clustering.n != instance.n:
        raise ValueError("clustering and instance disagree on n")
    lab = np.asarray(clustering.assignment)
    x = (lab[:, None] != lab[None, :]).astype(float)
    sizes = np.bincount(lab)[lab]
    y = np.maximum(0, sizes - 1 - instance.K).astype(float)
    return make_solution(instance, x, y)
