"""Ground-truth mean first passage times for simple random walks.

Three independent routes: a dense absorbing-chain linear solve on any
connected graph, a cluster-degree sum that is exact on trees, and a Monte
Carlo estimator. They exist to validate each other and the closed forms,
so none of them shares machinery with the others.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, GsuError, InvalidParams, NotATree, TooLarge
from .graphs import Graph, bfs_distances, bfs_path

__all__ = [
    "MfptVector",
    "mfpt_linear_solve",
    "mfpt_tree_cluster_sum",
    "cluster_weights",
    "mfpt_monte_carlo",
]

DENSE_SOLVE_LIMIT = 4000

_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class MfptVector:
    """Per-node expected steps for a random walk to first reach ``target``."""

    target: int
    values: np.ndarray


def mfpt_linear_solve(g: Graph, t: int, size_limit: int = DENSE_SOLVE_LIMIT) -> MfptVector:
    """Solve the first-passage system ``m_i = 1 + sum_{l != t} m_l / k_i``.

    Builds the dense system ``(I - Q) m = 1`` over the non-target nodes,
    where ``Q`` holds the uniform walk transition probabilities with the
    target column removed, and solves it by LU factorization with partial
    pivoting. The residual of the recurrence is checked before returning.

    Raises
    ------
    Disconnected
        If some node cannot reach the target.
    TooLarge
        If the graph exceeds the dense-solve size limit.
    """
    n = g.node_count
    if n > size_limit:
        raise TooLarge(f"{n} nodes exceeds dense solve limit {size_limit}")
    if (bfs_distances(g, t) < 0).any():
        raise Disconnected(f"not every node reaches target {t}")
    keep = np.array([i for i in range(n) if i != t], dtype=np.int64)
    pos = np.full(n, -1, dtype=np.int64)
    pos[keep] = np.arange(n - 1)
    a = np.eye(n - 1)
    for row, i in enumerate(keep):
        ki = g.degree(i)
        for l in g.neighbors(i):
            if l != t:
                a[row, pos[l]] -= 1.0 / ki
    m = np.linalg.solve(a, np.ones(n - 1))
    residual = np.abs(a @ m - 1.0).max() if n > 1 else 0.0
    if residual > _RESIDUAL_TOL:
        raise GsuError(f"first-passage residual {residual:.3e} above tolerance")
    values = np.zeros(n)
    values[keep] = m
    values.setflags(write=False)
    return MfptVector(target=t, values=values)


def _assert_tree(g: Graph):
    if g.edge_count != g.node_count - 1 or not (bfs_distances(g, 0) >= 0).all():
        raise NotATree(
            f"graph with {g.node_count} nodes and {g.edge_count} edges "
            "is not a connected acyclic tree"
        )


def cluster_weights(g: Graph, s: int, t: int) -> list[int]:
    """Degree mass of each backbone cluster on a tree.

    The unique s-t path is the backbone ``v_0 .. v_L``. Removing all
    backbone edges splits the tree; cluster ``K`` is the component that
    contains ``v_K``, and its weight is the sum of the members' degrees
    taken in the full tree. Weights are returned for ``K = 0 .. L-1`` (the
    target cluster never enters the passage-time sum).
    """
    _assert_tree(g)
    if s == t:
        raise InvalidParams("source and target must differ")
    backbone = bfs_path(g, s, t).nodes
    on_backbone = set(backbone)
    weights = []
    for pos, vk in enumerate(backbone[:-1]):
        total = 0
        stack = [vk]
        seen = {vk}
        while stack:
            v = stack.pop()
            total += g.degree(v)
            for w in g.neighbors(v):
                w = int(w)
                if w in seen:
                    continue
                # backbone edges are exactly the consecutive pairs; a tree
                # has no other edges between backbone nodes
                if v == vk and w in on_backbone:
                    continue
                seen.add(w)
                stack.append(w)
        weights.append(total)
    return weights


def mfpt_tree_cluster_sum(g: Graph, s: int, t: int) -> int:
    """Exact first passage time on a tree from the cluster-degree sums:

        m = sum_{I=1..L} sum_{K=0..I-1} W_K = sum_K (L - K) W_K

    Integer arithmetic throughout, so the result is exact.
    """
    weights = cluster_weights(g, s, t)
    L = len(weights)
    return sum((L - k) * w for k, w in enumerate(weights))


def mfpt_monte_carlo(
    g: Graph, s: int, t: int, runs: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Sample mean and standard error of the walk length from s to t."""
    if runs < 1:
        raise InvalidParams(f"runs must be >= 1, got {runs}")
    if bfs_distances(g, s)[t] < 0:
        raise Disconnected(f"{t} unreachable from {s}")
    counts = np.empty(runs)
    for r in range(runs):
        cur = s
        steps = 0
        while cur != t:
            nbrs = g.neighbors(cur)
            cur = int(nbrs[rng.integers(nbrs.size)])
            steps += 1
        counts[r] = steps
    mean = float(counts.mean())
    std_err = float(counts.std(ddof=1) / np.sqrt(runs)) if runs > 1 else 0.0
    return mean, std_err
