"""Random pivoting on signed complete graphs, with an optional size bound.

``cc_pivot`` clusters a random pivot with its remaining positive
neighbours.  ``bounded_cc_pivot`` first relabels a set ``X`` of positive
edges as negative so that every positive degree is at most ``K`` and then
pivots, so no cluster exceeds ``K + 1`` vertices.

Randomness comes from numpy's PCG64 bit generator.  A run seeded with
``s`` uses ``Generator(PCG64(s))``; Monte-Carlo trial ``i`` uses seed
``s + i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .instance import Clustering, WeightedInstance, validate_unweighted

EXACT_GUARD = 25


class GuardExceeded(RuntimeError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass(frozen=True, eq=False)
class SignedGraph:
    """Complete graph whose pairs are labelled ``+`` or ``-``.

    ``positive`` is a symmetric boolean matrix with a false diagonal.
    """

    positive: np.ndarray

    def __post_init__(self):
        pos = np.array(self.positive, dtype=bool)
        if pos.ndim != 2 or pos.shape[0] != pos.shape[1]:
            raise ValueError("positive must be a square matrix")
        if not np.array_equal(pos, pos.T):
            raise ValueError("positive must be symmetric")
        np.fill_diagonal(pos, False)
        pos.setflags(write=False)
        object.__setattr__(self, "positive", pos)
        object.__setattr__(self, "_nbrs",
                           tuple(tuple(np.flatnonzero(r).tolist()) for r in pos))

    @property
    def n(self) -> int:
        return self.positive.shape[0]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def degrees(self) -> np.ndarray:
        return self.positive.sum(axis=1)

    def max_degree(self) -> int:
        return int(self.degrees().max(initial=0))

    def positive_edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(self.positive, 1)))]

    def without(self, X: Iterable[tuple[int, int]]) -> "SignedGraph":
        """Relabel the pairs in ``X`` as negative."""
        pos = self.positive.copy()
        for u, v in X:
            pos[u, v] = pos[v, u] = False
        return SignedGraph(pos)

    def disagreements(self, clustering: Clustering) -> int:
        lab = np.asarray(clustering.assignment)
        same = lab[:, None] == lab[None, :]
        iu = np.triu_indices(self.n, 1)
        pos = self.positive[iu]
        s = same[iu]
        return int(np.sum(pos & ~s) + np.sum(~pos & s))

    def to_instance(self, K: int | None = None, mu=1.0) -> WeightedInstance:
        return WeightedInstance.from_signs(np.where(self.positive, 1, -1), mu=mu,
                                           K=self.n if K is None else K)

    @classmethod
    def from_instance(cls, instance: WeightedInstance) -> "SignedGraph":
        report = validate_unweighted(instance, require_unit_mu=False)
        if not report.ok:
            raise ValueError("instance is not a +/- labelling: " + str(report.violations[0]))
        return cls(instance.wplus == 1.0)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SignedGraph":
        pos = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            pos[u, v] = pos[v, u] = True
        return cls(pos)

    @classmethod
    def random(cls, n: int, p: float, rng: np.random.Generator) -> "SignedGraph":
        upper = np.triu(rng.random((n, n)) < p, 1)
        return cls(upper | upper.T)


def cc_pivot(graph: SignedGraph, pivots: np.random.Generator | Sequence[int] | int) -> Clustering:
    """Pivot clustering; ``pivots`` is a generator, a seed or an explicit order.

    With a generator the pivot is uniform over the live vertices.  With an
    explicit order the first still-live vertex of the sequence is used.
    """
    n = graph.n
    live = np.ones(n, dtype=bool)
    clusters = []
    if isinstance(pivots, (int, np.integer)):
        pivots = make_rng(pivots)
    if isinstance(pivots, np.random.Generator):
        pool = list(range(n))
        while pool:
            v = pool[int(pivots.integers(len(pool)))]
            cluster = [v] + [w for w in graph.neighbors(v) if live[w]]
            live[cluster] = False
            clusters.append(cluster)
            pool = [w for w in pool if live[w]]
    else:
        order = [int(v) for v in pivots]
        if sorted(order) != list(range(n)):
            raise ValueError(f"pivot sequence is not a permutation of 0..{n - 1}")
        for v in order:
            if not live[v]:
                continue
            cluster = [v] + [w for w in graph.neighbors(v) if live[w]]
            live[cluster] = False
            clusters.append(cluster)
    return Clustering.from_clusters(clusters, n)


def _overloaded_candidates(graph: SignedGraph, K: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    excess = np.maximum(graph.degrees() - K, 0)
    cand = [(u, v) for u, v in graph.positive_edges() if excess[u] or excess[v]]
    return excess, cand


def bounded_edge_removal_exact(graph: SignedGraph, K: int,
                               guard: int = EXACT_GUARD) -> frozenset[tuple[int, int]]:
    """Smallest positive-edge set whose removal leaves every degree at most ``K``.

    Only edges touching an overloaded vertex can help, so the search runs
    over those.  Sizes are tried in increasing order starting from half the
    total excess; within a size, subsets are visited in lexicographic edge
    order, so the first hit is the lexicographically smallest optimum.
    """
    excess, cand = _overloaded_candidates(graph, K)
    if not excess.any():
        return frozenset()
    if len(cand) > guard:
        raise GuardExceeded(
            f"{len(cand)} candidate edges exceed the exhaustive-search guard of {guard}")
    m = len(cand)
    # remaining candidate edges at each vertex from position i onward
    tail = np.zeros((m + 1, graph.n), dtype=int)
    for i in range(m - 1, -1, -1):
        tail[i] = tail[i + 1]
        u, v = cand[i]
        tail[i, u] += 1
        tail[i, v] += 1

    need = excess.copy()
    chosen: list[int] = []

    def search(start: int, budget: int) -> bool:
        total = int(need.sum())
        if total == 0:
            return True
        if budget == 0 or (total + 1) // 2 > budget:
            return False
        if (need > tail[start]).any():
            return False
        for i in range(start, m):
            u, v = cand[i]
            du, dv = int(need[u] > 0), int(need[v] > 0)
            # an edge between two satisfied endpoints is redundant
            if not (du or dv):
                continue
            need[u] -= du
            need[v] -= dv
            chosen.append(i)
            if search(i + 1, budget - 1):
                return True
            chosen.pop()
            need[u] += du
            need[v] += dv
        return False

    lower = (int(excess.sum()) + 1) // 2
    for size in range(lower, m + 1):
        need[:] = excess
        chosen.clear()
        if search(0, size):
            return frozenset(cand[i] for i in chosen)
    raise AssertionError("removing every candidate edge always suffices")


def bounded_edge_removal_greedy(graph: SignedGraph, K: int,
                                rng: np.random.Generator | None = None) -> frozenset[tuple[int, int]]:
    """Each vertex keeps ``K`` incident positive edges; the rest are removed.

    By default a vertex keeps the edges to its lowest-indexed positive
    neighbours; with ``rng`` it keeps a uniformly random ``K``-subset.  An
    edge survives only if both endpoints keep it.
    """
    keep = np.zeros((graph.n, graph.n), dtype=bool)
    for v in range(graph.n):
        nbrs = graph.neighbors(v)
        if len(nbrs) > K:
            nbrs = sorted(rng.choice(nbrs, size=K, replace=False).tolist()) if rng else nbrs[:K]
        keep[v, list(nbrs)] = True
    kept = keep & keep.T
    return frozenset((u, v) for u, v in graph.positive_edges() if not kept[u, v])


def removal_set(graph: SignedGraph, K: int, removal: str,
                rng: np.random.Generator | None = None) -> frozenset[tuple[int, int]]:
    if removal == "exact":
        return bounded_edge_removal_exact(graph, K)
    if removal == "greedy":
        return bounded_edge_removal_greedy(graph, K, rng)
    raise ValueError(f"unknown removal strategy {removal!r}")


def bounded_cc_pivot(graph: SignedGraph, K: int, removal: str = "exact",
                     pivots: np.random.Generator | Sequence[int] | int = 0,
                     X: frozenset[tuple[int, int]] | None = None) -> Clustering:
    """Pivot on the graph with ``X`` relabelled negative; clusters have size <= K + 1.

    ``X`` may be passed in to reuse one removal set across many trials.
    """
    if X is None:
        X = removal_set(graph, K, removal)
    H = graph.without(X)
    if H.max_degree() > K:
        raise AssertionError("removal set leaves a vertex above degree K")
    return cc_pivot(H, pivots)

