import itertools
import math

import numpy as np
import pytest
from scipy.optimize import linprog

from sizecc import (build_lp, check_feasible, optimal_clustering, solve, solve_instance)
from sizecc.generators import random_weighted
from sizecc.simplex import (Infeasible, IterationLimit, SimplexConfig, Unbounded,
                            solve_standard)
from sizecc.lp import GE, LE

EPS = 1e-7


def highs_optimum(problem):
    A, b, _ = problem.dense()
    bounds = [(lo, None if math.isinf(hi) else hi) for lo, hi in zip(problem.lower, problem.upper)]
    res = linprog(problem.objective, A_ub=A, b_ub=b, bounds=bounds, method="highs")
    assert res.status == 0
    return res.fun + problem.constant


def grid_triangle_minimum(steps=20):
    # objective x_01 + x_12 + (1 - x_02) over the metric cube, mu = 0
    g = [i / steps for i in range(steps + 1)]
    return min(a + b + 1 - c for a, b, c in itertools.product(g, g, g)
               if c <= a + b and a <= b + c and b <= a + c)


def test_perfect_instance_zero(two_cliques):
    sol = solve_instance(two_cliques)
    assert abs(sol.objective) <= EPS


def test_inconsistent_triangle(triangle):
    sol = solve_instance(triangle)
    assert sol.objective == pytest.approx(1.0, abs=EPS)
    # independent checks: grid minimizer and the best integer point
    assert grid_triangle_minimum() == pytest.approx(1.0, abs=1e-12)
    assert optimal_clustering(triangle).best_cost.total == 1.0


def test_matches_highs_and_is_feasible(rng):
    for i in range(60):
        n = int(rng.integers(2, 11)) if i < 55 else 12
        tau = [1.0, 2.0, math.inf][i % 3]
        mu = rng.choice([0.0, 0.5, 1.0, 2.0], size=n)
        inst = random_weighted(n, rng, tau=tau, mu=mu, K=int(rng.integers(0, n + 1)))
        P = build_lp(inst)
        sol = solve(P)
        report = check_feasible(inst, sol, EPS)
        assert report, report.violations[:3]
        assert sol.objective == pytest.approx(highs_optimum(P), abs=EPS)


def test_below_every_clustering(rng):
    for _ in range(40):
        n = int(rng.integers(2, 8))
        inst = random_weighted(n, rng, mu=rng.choice([0.0, 1.0], size=n), K=int(rng.integers(0, n)))
        assert solve_instance(inst).objective <= optimal_clustering(inst).best_cost.total + EPS


def test_size_rows_only_raise_the_optimum(rng):
    for _ in range(30):
        n = int(rng.integers(3, 9))
        free = random_weighted(n, rng, mu=0.0, K=int(rng.integers(0, 3)))
        bounded = free.with_mu(rng.uniform(0.1, 2.0, size=n))
        assert solve_instance(bounded).objective >= solve_instance(free).objective - EPS


def test_deterministic(rng):
    inst = random_weighted(8, rng, mu=1.0, K=1)
    a, b = solve_instance(inst), solve_instance(inst)
    assert np.array_equal(a.x, b.x) and np.array_equal(a.y, b.y)
    assert a.objective == b.objective


def test_zero_cost_instances(rng):
    for _ in range(20):
        n = int(rng.integers(2, 9))
        labels = rng.integers(0, 3, size=n)
        signs = np.where(labels[:, None] == labels[None, :], 1, -1)
        from sizecc import WeightedInstance
        inst = WeightedInstance.from_signs(signs, mu=0.0, K=n)
        assert abs(solve_instance(inst).objective) <= EPS


class TestStandardForm:
    def test_textbook_ge_problem(self):
        # min 3a + 4b  s.t.  a + b >= 2, 2a + b >= 3
        z, _ = solve_standard([3, 4], [[1, 1], [2, 1]], [2, 3], [GE, GE])
        assert z == pytest.approx([2, 0])

    def test_negative_rhs_is_flipped(self):
        z, _ = solve_standard([1, 1], [[-1, -1]], [-3], [LE])
        assert z.sum() == pytest.approx(3)

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            solve_standard([1], [[1], [1]], [1, 2], [LE, GE])

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            solve_standard([-1, 0], [[0, 1]], [1], [LE])

    def test_iteration_limit(self):
        with pytest.raises(IterationLimit):
            solve_standard([-1, -1], [[1, 0], [0, 1]], [1, 1], [LE, LE],
                           SimplexConfig(max_iterations=1))

    def test_beale_cycling_example(self):
        # classic example that cycles under the largest-coefficient rule
        c = [-0.75, 20, -0.5, 6]
        A = [[0.25, -8, -1, 9], [0.5, -12, -0.5, 3], [0, 0, 1, 0]]
        z, _ = solve_standard(c, A, [0, 0, 1], [LE, LE, LE])
        assert np.dot(c, z) == pytest.approx(-1.25)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SimplexConfig(max_iterations=0)
        with pytest.raises(ValueError):
            SimplexConfig(pivot_rule="dantzig")
