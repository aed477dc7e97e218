"""Weighted correlation-clustering instances, clusterings and their cost.

An instance is a complete graph on vertices ``0..n-1``.  Every unordered
pair carries a positive weight (paid when the pair is separated) and a
negative weight (paid when the pair shares a cluster).  Clusters with more
than ``K + 1`` members additionally pay ``mu_v * (|C| - (K + 1))`` for each
member ``v``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

INF = math.inf


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class WeightedInstance:
    """Complete graph with per-pair ``(wplus, wminus)`` and per-vertex penalties.

    ``wplus`` and ``wminus`` are symmetric ``n x n`` arrays with a zero
    diagonal.  ``tau`` is the cap on negative weights, or ``INF``.
    """

    wplus: np.ndarray
    wminus: np.ndarray
    mu: np.ndarray
    K: int
    tau: float = 1.0

    def __post_init__(self):
        wp = _frozen(self.wplus)
        wm = _frozen(self.wminus)
        mu = _frozen(self.mu)
        n = mu.shape[0] if mu.ndim == 1 else -1
        if mu.ndim != 1 or wp.shape != (n, n) or wm.shape != (n, n):
            raise ValueError("weights must be n x n and mu must have length n")
        if not (np.array_equal(wp, wp.T) and np.array_equal(wm, wm.T)):
            raise ValueError("weight tables must be symmetric")
        if np.isnan(wp).any() or np.isnan(wm).any() or np.isnan(mu).any():
            raise ValueError("NaN in instance data")
        if (wp < 0).any() or (wm < 0).any():
            raise ValueError("weights must be nonnegative")
        if (mu < 0).any() or not np.isfinite(mu).all():
            raise ValueError("mu must be finite and nonnegative")
        if int(self.K) != self.K or self.K < 0:
            raise ValueError(f"K must be a nonnegative integer, got {self.K!r}")
        tau = float(self.tau)
        if not (tau >= 1.0):
            raise ValueError(f"tau must lie in [1, INF], got {self.tau!r}")
        if n:
            # x_uu = 0 convention: the diagonal never contributes
            if wp.diagonal().any() or wm.diagonal().any():
                wp = wp.copy()
                wm = wm.copy()
                np.fill_diagonal(wp, 0.0)
                np.fill_diagonal(wm, 0.0)
                wp.setflags(write=False)
                wm.setflags(write=False)
        object.__setattr__(self, "wplus", wp)
        object.__setattr__(self, "wminus", wm)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "K", int(self.K))
        object.__setattr__(self, "tau", tau)

    @property
    def n(self) -> int:
        return self.mu.shape[0]

    def pairs(self) -> Iterable[tuple[int, int]]:
        """Unordered pairs ``(u, v)`` with ``u < v`` in lexicographic order."""
        n = self.n
        for u in range(n):
            for v in range(u + 1, n):
                yield u, v

    def with_mu(self, mu) -> "WeightedInstance":
        if np.isscalar(mu):
            mu = np.full(self.n, float(mu))
        return WeightedInstance(self.wplus, self.wminus, mu, self.K, self.tau)

    def with_K(self, K: int) -> "WeightedInstance":
        return WeightedInstance(self.wplus, self.wminus, self.mu, K, self.tau)

    @classmethod
    def from_pairs(cls, n: int, weights: dict, mu=0.0, K: int | None = None,
                   tau: float = 1.0) -> "WeightedInstance":
        """Build from ``{(u, v): (wplus, wminus)}``; every pair must be present."""
        wp = np.zeros((n, n))
        wm = np.zeros((n, n))
        seen = set()
        for (u, v), (a, b) in weights.items():
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad pair ({u}, {v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"pair {key} given twice")
            seen.add(key)
            wp[u, v] = wp[v, u] = a
            wm[u, v] = wm[v, u] = b
        if len(seen) != n * (n - 1) // 2:
            raise ValueError("weights must cover every unordered pair")
        if np.isscalar(mu):
            mu = np.full(n, float(mu))
        return cls(wp, wm, mu, n if K is None else K, tau)

    @classmethod
    def from_signs(cls, signs, mu=1.0, K: int | None = None,
                   tau: float = 1.0) -> "WeightedInstance":
        """Unweighted encoding: ``signs[u][v] > 0`` gives (1, 0), otherwise (0, 1)."""
        s = np.asarray(signs)
        n = s.shape[0]
        pos = (s > 0) & ~np.eye(n, dtype=bool)
        pos = pos | pos.T
        wp = pos.astype(float)
        wm = (~pos).astype(float)
        np.fill_diagonal(wm, 0.0)
        if np.isscalar(mu):
            mu = np.full(n, float(mu))
        return cls(wp, wm, mu, n if K is None else K, tau)


@dataclass(frozen=True)
class Violation:
    pair: tuple[int, int] | None
    vertex: int | None
    constraint: str
    value: float

    def __str__(self):
        where = f"pair {self.pair}" if self.pair is not None else f"vertex {self.vertex}"
        return f"{where}: {self.constraint} violated (value {self.value:g})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_weighted(instance: WeightedInstance) -> ValidationReport:
    """Check the weight regime required by LP rounding.

    Every pair must satisfy ``wplus <= 1``, ``wminus <= tau`` (skipped for
    ``tau = INF``) and ``wplus + wminus >= 1``.  Infinite weights are
    always reported.
    """
    wp, wm = instance.wplus, instance.wminus
    out = []
    for u, v in instance.pairs():
        a, b = wp[u, v], wm[u, v]
        if not (math.isfinite(a) and math.isfinite(b)):
            out.append(Violation((u, v), None, "finite weights", a if not math.isfinite(a) else b))
            continue
        if a > 1.0:
            out.append(Violation((u, v), None, "w+ <= 1", a))
        if math.isfinite(instance.tau) and b > instance.tau:
            out.append(Violation((u, v), None, "w- <= tau", b))
        if a + b < 1.0:
            out.append(Violation((u, v), None, "w+ + w- >= 1", a + b))
    return ValidationReport(tuple(out))


def validate_unweighted(instance: WeightedInstance,
                        require_unit_mu: bool = True) -> ValidationReport:
    """Check that every pair is exactly (1, 0) or (0, 1) and every ``mu_v = 1``."""
    wp, wm = instance.wplus, instance.wminus
    out = []
    for u, v in instance.pairs():
        a, b = wp[u, v], wm[u, v]
        if (a, b) not in ((1.0, 0.0), (0.0, 1.0)):
            out.append(Violation((u, v), None, "(w+, w-) in {(1,0), (0,1)}", a))
    if require_unit_mu:
        for v, m in enumerate(instance.mu):
            if m != 1.0:
                out.append(Violation(None, v, "mu_v = 1 required", float(m)))
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class Clustering:
    """Partition of ``0..n-1``; ``assignment[v]`` is the cluster id of ``v``.

    Ids are renumbered densely in order of first appearance, so two
    clusterings of the same partition built from the same cluster sequence
    compare equal.  Use :meth:`canonical` to compare partitions regardless
    of cluster order.
    """

    assignment: tuple[int, ...]

    def __post_init__(self):
        relabel: dict[int, int] = {}
        dense = []
        for c in self.assignment:
            c = int(c)
            if c not in relabel:
                relabel[c] = len(relabel)
            dense.append(relabel[c])
        object.__setattr__(self, "assignment", tuple(dense))

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[int]], n: int | None = None) -> "Clustering":
        clusters = [list(c) for c in clusters]
        total = sum(len(c) for c in clusters)
        if n is None:
            n = total
        assignment = [-1] * n
        for i, members in enumerate(clusters):
            if not members:
                raise ValueError("empty cluster")
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range for n={n}")
                if assignment[v] != -1:
                    raise ValueError(f"vertex {v} assigned twice")
                assignment[v] = i
        if -1 in assignment:
            raise ValueError(f"vertex {assignment.index(-1)} unassigned")
        return cls(tuple(assignment))

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def clusters(self) -> list[list[int]]:
        k = max(self.assignment, default=-1) + 1
        out: list[list[int]] = [[] for _ in range(k)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def sizes(self) -> list[int]:
        return [len(c) for c in self.clusters]

    def canonical(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.clusters)

    def same_partition(self, other: "Clustering") -> bool:
        return self.canonical() == other.canonical()


@dataclass(frozen=True)
class CostBreakdown:
    positive_cost: float
    negative_cost: float
    penalty_cost: float
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total",
                           self.positive_cost + self.negative_cost + self.penalty_cost)

    def as_dict(self) -> dict:
        return {"positive": self.positive_cost, "negative": self.negative_cost,
                "penalty": self.penalty_cost, "total": self.total}


def clustering_cost(instance: WeightedInstance, clustering: Clustering) -> CostBreakdown:
    if clustering.n != instance.n:
        raise ValueError(
            f"clustering covers {clustering.n} vertices, instance has {instance.n}")
    n = instance.n
    lab = np.asarray(clustering.assignment)
    iu = np.triu_indices(n, 1)
    same = (lab[:, None] == lab[None, :])[iu]
    positive = float(instance.wplus[iu][~same].sum())
    negative = float(instance.wminus[iu][same].sum())
    penalty = 0.0
    limit = instance.K + 1
    for members in clustering.clusters:
        if len(members) > limit:
            penalty += (len(members) - limit) * float(instance.mu[members].sum())
    return CostBreakdown(positive, negative, penalty)


def split_oversized(instance: WeightedInstance, clustering: Clustering) -> Clustering:
    """Cut every cluster larger than ``K + 1`` into consecutive chunks of ``K + 1``.

    Chunks follow increasing vertex id; the last chunk holds the remainder.
    """
    if clustering.n != instance.n:
        raise ValueError("clustering and instance disagree on n")
    size = instance.K + 1
    out: list[Sequence[int]] = []
    for members in clustering.clusters:
        if len(members) <= size:
            out.append(members)
            continue
        members = sorted(members)
        out.extend(members[i:i + size] for i in range(0, len(members), size))
    return Clustering.from_clusters(out, instance.n)
