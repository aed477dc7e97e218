"""Exhaustive optimum over all set partitions, and Monte-Carlo ratio statistics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .instance import Clustering, CostBreakdown, WeightedInstance, clustering_cost
from .pivot import SignedGraph, cc_pivot, make_rng, removal_set
from .rounding import PivotOrder, mu_star, optimal_alpha, round_solution

ORACLE_GUARD = 12
TIE_TOL = 1e-12


class OracleGuard(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    best_clustering: Clustering
    best_cost: CostBreakdown
    partitions_examined: int


def optimal_clustering(instance: WeightedInstance, hard_bound: bool = False,
                       guard: int = ORACLE_GUARD) -> OracleResult:
    """Minimum-cost clustering by enumerating restricted-growth strings.

    With ``hard_bound`` only partitions whose blocks all have at most
    ``K + 1`` members are considered.  Ties go to the lexicographically
    smallest string.
    """
    n = instance.n
    if n > guard:
        raise OracleGuard(f"n = {n} exceeds the enumeration guard of {guard}")
    if n == 0:
        empty = Clustering(())
        return OracleResult(empty, clustering_cost(instance, empty), 1)
    wp = instance.wplus.tolist()
    # cost change when a vertex joins a block instead of staying apart from it
    delta = (instance.wminus - instance.wplus).tolist()
    mu = instance.mu.tolist()
    limit = instance.K + 1

    rgs = [0] * n
    blocks: list[list[int]] = []
    best = [math.inf, None]
    examined = 0

    def penalty() -> float:
        total = 0.0
        for b in blocks:
            if len(b) > limit:
                total += (len(b) - limit) * sum(mu[v] for v in b)
        return total

    def visit(i: int, edge_cost: float) -> None:
        nonlocal examined
        if i == n:
            examined += 1
            cost = edge_cost + penalty()
            if cost < best[0] - TIE_TOL:
                best[0] = cost
                best[1] = tuple(rgs)
            return
        apart = sum(wp[i][:i])
        row = delta[i]
        for k, b in enumerate(blocks):
            if hard_bound and len(b) >= limit:
                continue
            rgs[i] = k
            b.append(i)
            visit(i + 1, edge_cost + apart + sum(row[v] for v in b[:-1]))
            b.pop()
        rgs[i] = len(blocks)
        blocks.append([i])
        visit(i + 1, edge_cost + apart)
        blocks.pop()

    visit(0, 0.0)
    clustering = Clustering(best[1])
    return OracleResult(clustering, clustering_cost(instance, clustering), examined)


@dataclass(frozen=True)
class RatioStats:
    algorithm: str
    trials: int
    seed: int
    mean_cost: float
    max_cost: float
    opt: float
    mean_ratio: float | None
    max_ratio: float | None
    costs: tuple[float, ...]

    def as_dict(self) -> dict:
        return {"algorithm": self.algorithm, "trials": self.trials, "seed": self.seed,
                "mean_cost": self.mean_cost, "max_cost": self.max_cost, "opt": self.opt,
                "mean_ratio": self.mean_ratio, "max_ratio": self.max_ratio}


@dataclass(frozen=True)
class Algorithm:
    """A randomized clustering routine and the optimum it is measured against.

    ``prepare`` does the seed-independent work once (edge removal, LP
    solve); ``run`` maps the prepared state and a trial seed to a clustering.
    """

    name: str
    hard_bound: bool
    prepare: Callable[[WeightedInstance], object]
    run: Callable[[object, int], Clustering]
    ignore_penalty: bool = False


def _unbounded_instance(instance: WeightedInstance) -> WeightedInstance:
    return instance.with_mu(0.0)


def _prep_pivot(instance):
    return SignedGraph.from_instance(instance)


def _prep_bounded(removal):
    def prep(instance):
        g = SignedGraph.from_instance(instance)
        return g, removal_set(g, instance.K, removal)
    return prep


def _run_bounded(state, seed):
    g, X = state
    return cc_pivot(g.without(X), make_rng(seed))


def _prep_round(instance):
    from .simplex import solve_instance
    return instance, solve_instance(instance), optimal_alpha(instance.tau, mu_star(instance)).alpha


def _run_round(state, seed):
    instance, sol, alpha = state
    return round_solution(instance, sol, alpha, PivotOrder.seeded(seed))


ALGORITHMS: dict[str, Algorithm] = {
    "cc_pivot": Algorithm("cc_pivot", False, _prep_pivot,
                          lambda g, seed: cc_pivot(g, make_rng(seed)), ignore_penalty=True),
    "bounded_cc_pivot_exact": Algorithm("bounded_cc_pivot_exact", True,
                                        _prep_bounded("exact"), _run_bounded),
    "bounded_cc_pivot_greedy": Algorithm("bounded_cc_pivot_greedy", True,
                                         _prep_bounded("greedy"), _run_bounded),
    "region_rounding": Algorithm("region_rounding", False, _prep_round, _run_round),
}


def empirical_ratio(algorithm: str, instance: WeightedInstance, trials: int, seed: int,
                    opt: float | None = None) -> RatioStats:
    """Run ``trials`` independent seeded runs (seeds ``seed + i``) against the optimum.

    ``cc_pivot`` is compared with the unconstrained optimum (penalties
    dropped); the bounded pivots with the hard-bounded optimum.  When the
    optimum is zero the ratios are ``1.0`` if every run also costs zero and
    ``None`` otherwise; ratio statistics skip such instances.
    """
    try:
        algo = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; "
                         f"choose from {sorted(ALGORITHMS)}") from None
    if trials <= 0:
        raise ValueError("trials must be positive")
    scored = _unbounded_instance(instance) if algo.ignore_penalty else instance
    if opt is None:
        opt = optimal_clustering(scored, hard_bound=algo.hard_bound).best_cost.total
    state = algo.prepare(instance)
    costs = np.array([clustering_cost(scored, algo.run(state, seed + i)).total
                      for i in range(trials)])
    mean, worst = float(costs.mean()), float(costs.max())
    if opt > 0:
        mean_ratio, max_ratio = mean / opt, worst / opt
    elif worst == 0:
        mean_ratio = max_ratio = 1.0
    else:
        mean_ratio = max_ratio = None
    return RatioStats(algorithm, trials, seed, mean, worst, float(opt),
                      mean_ratio, max_ratio, tuple(costs.tolist()))
