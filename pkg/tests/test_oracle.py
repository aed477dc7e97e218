import itertools

import numpy as np
import pytest

from sizecc import (Clustering, SignedGraph, WeightedInstance, clustering_cost, empirical_ratio,
                    optimal_clustering, solve_instance)
from sizecc.generators import random_signed, random_weighted
from sizecc.oracle import OracleGuard

BELL = [1, 1, 2, 5, 15, 52, 203, 877]


def all_labelings(n):
    # every assignment of labels, a superset of the partitions with repeats
    return itertools.product(range(n), repeat=n)


def test_triangle(triangle):
    assert optimal_clustering(triangle).best_cost.total == 1


def test_k4_soft():
    inst = WeightedInstance.from_signs(np.ones((4, 4)), mu=1.0, K=1)
    res = optimal_clustering(inst)
    assert res.best_cost.total == 4
    assert res.partitions_examined == 15
    assert sorted(res.best_clustering.sizes()) == [2, 2]


def test_single_vertex():
    res = optimal_clustering(WeightedInstance.from_signs(np.ones((1, 1))))
    assert res.best_clustering.clusters == [[0]] and res.best_cost.total == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_bell_numbers(n, rng):
    assert optimal_clustering(random_weighted(n, rng)).partitions_examined == BELL[n]


def test_matches_naive_enumeration(rng):
    for _ in range(40):
        n = int(rng.integers(1, 6))
        inst = random_weighted(n, rng, mu=rng.random(n), K=int(rng.integers(0, n)))
        naive = min(clustering_cost(inst, Clustering(lab)).total for lab in all_labelings(n))
        res = optimal_clustering(inst)
        assert res.best_cost.total == pytest.approx(naive, abs=1e-9)
        assert res.best_cost == clustering_cost(inst, res.best_clustering)


def test_hard_bound_matches_heavy_penalty(rng):
    for _ in range(40):
        n = int(rng.integers(2, 7))
        K = int(rng.integers(0, n))
        inst = random_weighted(n, rng, mu=0.0, K=K)
        heavy = inst.with_mu(1.0 + inst.wplus.sum() + inst.wminus.sum())
        hard = optimal_clustering(inst, hard_bound=True)
        assert max(hard.best_clustering.sizes()) <= K + 1
        assert hard.best_cost.total == pytest.approx(optimal_clustering(heavy).best_cost.total)


def test_not_below_lp(rng):
    for _ in range(20):
        n = int(rng.integers(2, 7))
        inst = random_weighted(n, rng, mu=rng.choice([0.0, 1.0], size=n), K=int(rng.integers(0, n)))
        assert optimal_clustering(inst).best_cost.total >= solve_instance(inst).objective - 1e-7


def test_guard():
    with pytest.raises(OracleGuard):
        optimal_clustering(WeightedInstance.from_signs(np.ones((13, 13))))


def test_tie_break_is_lexicographic():
    # all-negative: singletons are the unique optimum with string 0,1,2,...
    inst = WeightedInstance.from_signs(-np.ones((4, 4)), mu=0.0)
    assert optimal_clustering(inst).best_clustering.assignment == (0, 1, 2, 3)
    # zero-weight pairs tie everywhere; the all-zero string comes first
    tied = WeightedInstance(np.full((3, 3), 0.5), np.full((3, 3), 0.5), np.zeros(3), 3)
    assert optimal_clustering(tied).best_clustering.assignment == (0, 0, 0)


class TestEmpiricalRatio:
    def test_positive_triangle(self):
        inst = SignedGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)]).to_instance()
        stats = empirical_ratio("cc_pivot", inst, 50, seed=1)
        assert stats.opt == 0 and stats.mean_ratio == 1.0 and stats.max_cost == 0

    def test_signed_triangle(self, triangle):
        stats = empirical_ratio("cc_pivot", triangle, 100, seed=0)
        assert stats.mean_cost == 1.0 and stats.opt == 1.0 and stats.mean_ratio == 1.0

    def test_seeds_are_reproducible(self, rng):
        inst = random_signed(7, rng).to_instance(K=2)
        a = empirical_ratio("bounded_cc_pivot_exact", inst, 30, seed=5)
        b = empirical_ratio("bounded_cc_pivot_exact", inst, 30, seed=5)
        assert a == b
        assert a.costs[3:] == empirical_ratio("bounded_cc_pivot_exact", inst, 27, seed=8).costs

    def test_zero_opt_found_by_every_trial(self):
        # a clique plus an isolated vertex: every pivot order is perfect
        g = SignedGraph.from_edges(3, [(0, 1)])
        stats = empirical_ratio("cc_pivot", g.to_instance(), 20, seed=0)
        assert stats.mean_ratio == 1.0

    def test_bounded_exact_on_random_graphs(self, rng):
        for _ in range(10):
            inst = random_signed(7, rng).to_instance(K=int(rng.integers(1, 3)))
            stats = empirical_ratio("bounded_cc_pivot_exact", inst, 200, seed=0)
            if stats.mean_ratio is not None:
                assert stats.mean_ratio <= 7

    def test_region_rounding(self, rng):
        inst = random_weighted(5, rng, mu=1.0, K=1)
        stats = empirical_ratio("region_rounding", inst, 10, seed=0)
        assert stats.mean_cost >= stats.opt

    def test_unknown_algorithm(self, triangle):
        with pytest.raises(ValueError, match="unknown algorithm"):
            empirical_ratio("magic", triangle, 1, 0)

    def test_as_dict(self, triangle):
        d = empirical_ratio("cc_pivot", triangle, 3, 0).as_dict()
        assert d["trials"] == 3 and d["algorithm"] == "cc_pivot"
