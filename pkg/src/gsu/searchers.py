"""Head-to-head trials: prior shortest-path searcher vs greedy walker.

The prior searcher commits to a shortest hop path computed from unit
weights and pays the realized (perturbed) cost of its ``L`` edges. The
greedy walker sees fresh perturbations on its incident edges at every
step and follows a uniformly chosen minimum-weight edge until it hits the
target. One trial reports both realized path weights and their ratio.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .graphs import Graph, bfs_path
from .uncertainty import UncertaintyModel

__all__ = [
    "RunOutcome",
    "default_max_steps",
    "dijkstra_path_weight",
    "greedy_walk",
    "simulation_run",
]

# the walk terminates almost surely; the cap only guards pathological draws
MAX_STEPS_PER_NODE = 10_000


@dataclass(frozen=True)
class RunOutcome:
    """One trial: realized weights of both searchers between s and t."""

    source: int
    target: int
    L: int
    w_d: float
    w_g: float
    steps: int
    ratio: float
    censored: bool


def default_max_steps(g: Graph) -> int:
    return MAX_STEPS_PER_NODE * g.node_count


def dijkstra_path_weight(
    L: int, m: UncertaintyModel, rng: np.random.Generator
) -> float:
    """Realized cost of a committed L-edge path: ``L + u * Binomial(L, p)``.

    Each edge costs its unit prior weight plus an independent extra-weight
    draw; only the hop count matters, so the path itself is not needed.
    """
    if L < 1:
        raise InvalidParams(f"L must be >= 1, got {L}")
    return L + m.u * int(rng.binomial(L, m.p))


def greedy_walk(
    g: Graph,
    s: int,
    t: int,
    m: UncertaintyModel,
    rng: np.random.Generator,
    max_steps: int,
) -> tuple[float, int, bool]:
    """Walk greedily from s until t, re-perturbing incident edges each step.

    Every step draws a fresh extra weight for each incident edge, then
    moves along one uniformly chosen minimum-weight edge, paying its unit
    prior weight plus the drawn extra. Returns (total weight, steps,
    censored); ``censored`` is True when the step cap fired before the
    target was reached.
    """
    if max_steps < 1:
        raise InvalidParams(f"max_steps must be >= 1, got {max_steps}")
    if s == t:
        return 0.0, 0, False
    u, p = m.u, m.p
    w_total = 0.0
    steps = 0
    cur = s
    while cur != t:
        if steps >= max_steps:
            return w_total, steps, True
        nbrs = g.indices[g.indptr[cur] : g.indptr[cur + 1]]
        xi = np.where(rng.random(nbrs.size) < p, u, 0.0)
        lowest = float(xi.min())
        candidates = np.flatnonzero(xi == lowest)
        pick = candidates[int(rng.integers(candidates.size))]
        w_total += 1.0 + lowest
        cur = int(nbrs[pick])
        steps += 1
    return w_total, steps, False


def simulation_run(
    g: Graph,
    m: UncertaintyModel,
    rng: np.random.Generator,
    max_steps: int | None = None,
) -> RunOutcome:
    """One full trial on a connected graph with >= 2 nodes.

    Source and target are drawn uniformly (target redrawn until distinct),
    the hop length comes from a breadth-first shortest path, and both
    searchers pay realized costs under the same uncertainty model.
    """
    if g.node_count < 2:
        raise InvalidParams("need at least 2 nodes for a trial")
    if max_steps is None:
        max_steps = default_max_steps(g)
    s = int(rng.integers(g.node_count))
    t = int(rng.integers(g.node_count))
    while t == s:
        t = int(rng.integers(g.node_count))
    L = bfs_path(g, s, t).length
    w_d = dijkstra_path_weight(L, m, rng)
    w_g, steps, censored = greedy_walk(g, s, t, m, rng, max_steps)
    return RunOutcome(
        source=s,
        target=t,
        L=L,
        w_d=w_d,
        w_g=w_g,
        steps=steps,
        ratio=w_g / w_d,
        censored=censored,
    )
