"""Random instances, clusterings and LP points for property testing."""
from __future__ import annotations

import math

import numpy as np

from .instance import Clustering, WeightedInstance
from .lp import LpSolution, integer_solution_from_clustering, make_solution
from .pivot import SignedGraph


def random_clustering(n: int, rng: np.random.Generator, max_clusters: int | None = None) -> Clustering:
    k = int(rng.integers(1, (max_clusters or n) + 1))
    return Clustering(tuple(int(c) for c in rng.integers(0, k, size=n)))


def random_weighted(n: int, rng: np.random.Generator, tau: float = 1.0, mu=0.0,
                    K: int | None = None, noise: float = 0.25) -> WeightedInstance:
    """Planted-partition instance satisfying ``wplus <= 1``, ``wminus <= tau``
    and ``wplus + wminus >= 1``.

    Pairs inside a planted cluster lean positive, others lean negative; a
    ``noise`` fraction of pairs gets fully random weights.  Negative
    weights for ``tau = INF`` range up to 50.
    """
    planted = rng.integers(0, max(1, n // 2), size=n)
    cap = 50.0 if math.isinf(tau) else tau
    wp = np.zeros((n, n))
    wm = np.zeros((n, n))
    for u in range(n):
        for v in range(u + 1, n):
            r = rng.random()
            if r < noise:
                a = rng.random()
            elif planted[u] == planted[v]:
                a = rng.uniform(0.6, 1.0)
            else:
                a = rng.uniform(0.0, 0.4)
            kind = rng.random()
            if kind < 0.4:
                b = 1.0 - a                      # probability constraints
            elif kind < 0.8:
                b = rng.uniform(1.0 - a, cap)
            else:
                b = rng.uniform(max(0.0, 1.0 - a), min(cap, 1.0 - a + 0.5))
            b = min(max(b, 1.0 - a), cap)
            wp[u, v] = wp[v, u] = a
            wm[u, v] = wm[v, u] = b
    if np.isscalar(mu):
        mu = np.full(n, float(mu))
    return WeightedInstance(wp, wm, mu, n if K is None else K, tau)


def random_signed(n: int, rng: np.random.Generator, p: float | None = None) -> SignedGraph:
    if p is None:
        p = rng.uniform(0.2, 0.8)
    return SignedGraph.random(n, p, rng)


def convex_point(instance: WeightedInstance, rng: np.random.Generator,
                 anchor: LpSolution | None = None, parts: int = 3) -> LpSolution:
    """Random convex combination of integer embeddings (and optionally ``anchor``).

    Every LP constraint is linear, so the combination stays feasible.
    """
    points = [integer_solution_from_clustering(instance, random_clustering(instance.n, rng))
              for _ in range(parts)]
    if anchor is not None:
        points.append(anchor)
    lam = rng.dirichlet(np.ones(len(points)))
    x = sum(l * p.x for l, p in zip(lam, points))
    y = sum(l * p.y for l, p in zip(lam, points))
    return make_solution(instance, np.clip(x, 0.0, 1.0), np.maximum(y, 0.0))
