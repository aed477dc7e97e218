"""Threshold region growing over an LP point, and its approximation constant.

``round_solution`` repeatedly takes a pivot ``u`` from the live set ``S``,
collects ``T = {w in S - u : x_uw <= alpha}`` and emits either the
singleton ``{u}`` (when the average LP distance to ``T`` is at least
``alpha / 2``) or the cluster ``{u} | T``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .instance import INF, Clustering, WeightedInstance
from .lp import LpSolution, check_feasible

MU_STAR_LIMIT = 4.0
BISECT_TOL = 1e-12


class AlphaDomainError(ValueError):
    pass


@dataclass(frozen=True)
class PivotOrder:
    """How the next pivot is chosen from the live set.

    ``PivotOrder.lowest()`` takes the smallest live id, ``PivotOrder.explicit``
    follows a given permutation and ``PivotOrder.seeded`` follows a uniformly
    random permutation drawn from the seed.
    """

    kind: str
    sequence: tuple[int, ...] = ()
    seed: int = 0

    @classmethod
    def lowest(cls) -> "PivotOrder":
        return cls("lowest")

    @classmethod
    def explicit(cls, sequence: Sequence[int]) -> "PivotOrder":
        return cls("explicit", tuple(int(v) for v in sequence))

    @classmethod
    def seeded(cls, seed: int) -> "PivotOrder":
        return cls("seeded", seed=int(seed))

    def permutation(self, n: int) -> list[int]:
        if self.kind == "lowest":
            return list(range(n))
        if self.kind == "explicit":
            if sorted(self.sequence) != list(range(n)):
                raise ValueError(f"pivot sequence is not a permutation of 0..{n - 1}")
            return list(self.sequence)
        if self.kind == "seeded":
            rng = np.random.Generator(np.random.PCG64(self.seed))
            return [int(v) for v in rng.permutation(n)]
        raise ValueError(f"unknown pivot order {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "seeded":
            return f"seed:{self.seed}"
        if self.kind == "explicit":
            return "explicit:" + ",".join(map(str, self.sequence))
        return self.kind


def round_solution(instance: WeightedInstance, solution: LpSolution, alpha: float,
                   order: PivotOrder = PivotOrder.lowest(), check: bool = False,
                   eps: float = 1e-7) -> Clustering:
    if not (0.0 < alpha <= 0.5):
        raise AlphaDomainError(f"alpha must lie in (0, 1/2], got {alpha!r}")
    if solution.n != instance.n:
        raise ValueError("solution and instance disagree on n")
    if check:
        report = check_feasible(instance, solution, eps)
        if not report:
            raise ValueError("infeasible LP point: " + "; ".join(report.violations[:3]))
    x = solution.x
    n = instance.n
    live = np.ones(n, dtype=bool)
    clusters = []
    for u in order.permutation(n):
        if not live[u]:
            continue
        T = np.flatnonzero(live & (x[u] <= alpha))
        T = T[T != u]
        if T.size and x[u, T].sum() >= alpha * T.size / 2:
            cluster = [u]
        else:
            cluster = [u, *T.tolist()]
        live[cluster] = False
        clusters.append(cluster)
    return Clustering.from_clusters(clusters, n)


def mu_star(instance: WeightedInstance) -> float:
    if instance.n < 2:
        raise ValueError("mu* needs at least two vertices")
    top = np.sort(instance.mu)[-2:]
    return float(top[0] + top[1])


def _check_alpha(mu_star: float, alpha: float) -> None:
    if mu_star < 0:
        raise AlphaDomainError("mu* must be nonnegative")
    if alpha == 0.5 and mu_star == 0:
        return
    if not (0.0 < alpha < 0.5):
        raise AlphaDomainError(
            f"alpha must lie in (0, 1/2), or equal 1/2 when mu* = 0; got {alpha!r}")


def _edge_term(tau: float, alpha: float) -> float:
    # 1 / (1 - 2 alpha + alpha / (2 tau)); the tau term vanishes at INF
    extra = 0.0 if math.isinf(tau) else alpha / (2.0 * tau)
    return 1.0 / (1.0 - 2.0 * alpha + extra)


def c_alpha(tau: float, mu_star: float, alpha: float) -> float:
    """Approximation constant of region growing at threshold ``alpha``."""
    _check_alpha(mu_star, alpha)
    if not tau >= 1.0:
        raise AlphaDomainError(f"tau must lie in [1, INF], got {tau!r}")
    if alpha == 0.5:
        return max(_edge_term(tau, alpha), 2.0 / alpha)
    mid = 2.0 * alpha * mu_star / (1.0 - 2.0 * alpha) + _edge_term(tau, alpha)
    return max(mu_star, mid, 2.0 / alpha)


def alpha_residual(tau: float, mu_star: float, alpha: float) -> float:
    """Middle term of ``c_alpha`` minus ``2 / alpha``; increasing in ``alpha``."""
    return (2.0 * alpha * mu_star / (1.0 - 2.0 * alpha)
            + _edge_term(tau, alpha) - 2.0 / alpha)


@dataclass(frozen=True)
class AlphaPlan:
    tau: float
    mu_star: float
    alpha: float
    c_alpha: float

    @property
    def gamma(self) -> float:
        if math.isinf(self.tau):
            return self.alpha
        return self.alpha - self.alpha / (4.0 * self.tau)

    def as_dict(self) -> dict:
        return {"tau": "INF" if math.isinf(self.tau) else self.tau,
                "mu_star": self.mu_star, "alpha": self.alpha,
                "gamma": self.gamma, "c_alpha": self.c_alpha}


def optimal_alpha(tau: float, mu_star: float) -> AlphaPlan:
    """Threshold minimizing ``c_alpha`` for ``mu* in [0, 4]``.

    Closed forms cover ``mu* = 0`` and ``tau = INF``; the remaining cases
    bisect the residual on ``(0, 1/2)``.
    """
    if not tau >= 1.0:
        raise AlphaDomainError(f"tau must lie in [1, INF], got {tau!r}")
    if mu_star < 0:
        raise AlphaDomainError("mu* must be nonnegative")
    if mu_star > MU_STAR_LIMIT:
        raise AlphaDomainError(
            f"mu* = {mu_star:g} exceeds 4; the optimal threshold is only derived "
            "for mu* <= 4. Pass an explicit alpha instead.")
    if mu_star == 0:
        if math.isinf(tau):
            return AlphaPlan(tau, 0.0, 0.4, 5.0)
        return AlphaPlan(tau, 0.0, 2.0 * tau / (5.0 * tau - 1.0), 5.0 - 1.0 / tau)
    if math.isinf(tau):
        root = math.sqrt(25.0 + 16.0 * mu_star)
        alpha = (root - 5.0) / (4.0 * mu_star)
        return AlphaPlan(tau, mu_star, alpha, 8.0 * mu_star / (root - 5.0))
    lo, hi = 0.0, 0.5
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if alpha_residual(tau, mu_star, mid) < 0:
            lo = mid
        else:
            hi = mid
    alpha = 0.5 * (lo + hi)
    return AlphaPlan(tau, mu_star, alpha, c_alpha(tau, mu_star, alpha))


def rcost_lower_bound(instance: WeightedInstance, x: np.ndarray, u: int, z: int,
                      R: Sequence[int], zeta: float, alpha: float,
                      tol: float = 1e-12) -> float:
    """Lower bound on the LP-cost of the edges joining ``z`` to the set ``R``.

    Requires ``sum_{v in R} x_uv <= alpha |R| / 2``, ``x_uv <= zeta`` on
    ``R``, ``zeta in [0, 1]`` and ``z not in R``.
    """
    R = list(R)
    if not 0.0 <= zeta <= 1.0:
        raise ValueError("zeta must lie in [0, 1]")
    if z in R:
        raise ValueError("z must not belong to R")
    if not R:
        return 0.0
    xu = np.asarray([x[u, v] for v in R])
    if xu.sum() > alpha * len(R) / 2 + tol:
        raise ValueError("sum of x_uv over R exceeds alpha |R| / 2")
    if (xu > zeta + tol).any():
        raise ValueError("some x_uv exceeds zeta")
    wp = instance.wplus[R, z]
    wm = instance.wminus[R, z]
    xuz = x[u, z]
    return float(np.sum(wp * xuz + wm * (1.0 - xuz) - zeta * (wp + wm) + (zeta - alpha / 2)))


__all__ = ["INF", "AlphaDomainError", "AlphaPlan", "PivotOrder", "alpha_residual",
           "c_alpha", "mu_star", "optimal_alpha", "rcost_lower_bound", "round_solution"]
