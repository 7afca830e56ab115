"""Graph family generators and a (connectivity, half-diameter) search.

Every randomized generator takes a ``numpy.random.Generator`` and is a
pure function of (params, rng state), so the same seed always reproduces
the same edge set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GenerationFailed, InvalidParams, NotFound, TooLarge
from .graphs import (
    Graph,
    bfs_distances,
    build_graph,
    degree_stats,
    half_diameter_H,
    largest_component,
)

__all__ = [
    "GeneratorSpec",
    "FAMILIES",
    "c_ary_tree",
    "random_regular",
    "lattice",
    "watts_strogatz",
    "erdos_renyi",
    "barabasi_albert",
    "directed_scale_free",
    "generate",
    "find_graph_with",
    "find_graph_with_spec",
]

FAMILIES = (
    "cary_tree",
    "random_regular",
    "lattice",
    "watts_strogatz",
    "erdos_renyi",
    "barabasi_albert",
    "directed_scale_free",
)

MAX_TREE_NODES = 5_000_000

_PAIRING_ATTEMPTS = 200
_WS_ATTEMPTS = 100


@dataclass(frozen=True)
class GeneratorSpec:
    """Family name, family-specific params, and the seed that built a graph."""

    family: str
    params: dict = field(compare=False)
    seed: int | None = None

    def build(self) -> Graph:
        rng = np.random.default_rng(self.seed)
        return generate(self.family, self.params, rng)


def _is_connected(g: Graph) -> bool:
    return g.node_count == 1 or (bfs_distances(g, 0) >= 0).all()


def c_ary_tree(c: int, H: int) -> Graph:
    """Complete c-ary tree of height ``H``, breadth-first numbered, root 0.

    Node count is ``(c**(H+1) - 1) / (c - 1)``; children of node ``i`` are
    ``c*i + 1 .. c*i + c``.
    """
    if c < 2 or H < 1:
        raise InvalidParams(f"need c >= 2 and H >= 1, got c={c}, H={H}")
    n = (c ** (H + 1) - 1) // (c - 1)
    if n > MAX_TREE_NODES:
        raise TooLarge(f"tree with {n} nodes exceeds limit {MAX_TREE_NODES}")
    internal = (c**H - 1) // (c - 1)
    edges = [(i, c * i + k) for i in range(internal) for k in range(1, c + 1)]
    return build_graph(edges, node_count=n)


def random_regular(n: int, c: int, rng: np.random.Generator) -> Graph:
    """Connected random c-regular graph via stub pairing.

    Pairings that would create self-loops or parallel edges are redrawn;
    stuck pairings and disconnected results are rejected wholesale and
    regenerated, up to a fixed attempt budget.
    """
    if (n * c) % 2 != 0:
        raise InvalidParams(f"n*c must be even, got n={n}, c={c}")
    if not 0 < c < n:
        raise InvalidParams(f"need 0 < c < n, got n={n}, c={c}")
    for _ in range(_PAIRING_ATTEMPTS):
        edges = _pair_stubs(n, c, rng)
        if edges is None:
            continue
        g = build_graph(edges, node_count=n)
        if _is_connected(g):
            return g
    raise GenerationFailed(f"no connected {c}-regular graph on {n} nodes found")


def _pair_stubs(n: int, c: int, rng: np.random.Generator):
    stubs = np.repeat(np.arange(n), c)
    edges: set[tuple[int, int]] = set()
    while stubs.size:
        rng.shuffle(stubs)
        leftover = []
        added = 0
        for a, b in zip(stubs[0::2], stubs[1::2]):
            a, b = int(a), int(b)
            e = (a, b) if a < b else (b, a)
            if a == b or e in edges:
                leftover.extend((a, b))
            else:
                edges.add(e)
                added += 1
        if not added:
            return None
        stubs = np.asarray(leftover)
    return edges


def lattice(dims, periodic: bool = False) -> Graph:
    """Uniform grid graph; the periodic variant wraps every axis.

    Periodic lattices require every side >= 3 (a side of 2 would collapse
    the wrap edge onto the existing one); every node then has degree
    ``2 * len(dims)``.
    """
    dims = [int(d) for d in dims]
    if not dims:
        raise InvalidParams("dims must be non-empty")
    minimum = 3 if periodic else 2
    if any(d < minimum for d in dims):
        raise InvalidParams(f"every dim must be >= {minimum}, got {dims}")
    n = int(np.prod(dims))
    strides = np.ones(len(dims), dtype=np.int64)
    for axis in range(len(dims) - 2, -1, -1):
        strides[axis] = strides[axis + 1] * dims[axis + 1]
    edges = []
    for node in range(n):
        rem = node
        for axis, d in enumerate(dims):
            coord = rem // strides[axis]
            rem %= strides[axis]
            if coord + 1 < d:
                edges.append((node, node + int(strides[axis])))
            elif periodic:
                edges.append((node, node - (d - 1) * int(strides[axis])))
    return build_graph(edges, node_count=n)


def watts_strogatz(
    n: int, k: int, beta: float, rng: np.random.Generator
) -> Graph:
    """Small-world graph: ring of ``n`` nodes, each tied to its ``k``
    nearest neighbors, with every edge's far endpoint rewired with
    probability ``beta`` to a uniform non-duplicate, non-self target.

    The edge count is exactly ``n*k/2`` for any beta. Disconnected results
    are regenerated up to a fixed attempt budget.
    """
    if k % 2 != 0 or not 0 < k < n:
        raise InvalidParams(f"k must be even and 0 < k < n, got n={n}, k={k}")
    if not 0.0 <= beta <= 1.0:
        raise InvalidParams(f"beta must be in [0, 1], got {beta}")
    for _ in range(_WS_ATTEMPTS):
        edges = {
            (min(i, (i + j) % n), max(i, (i + j) % n))
            for j in range(1, k // 2 + 1)
            for i in range(n)
        }
        deg = np.full(n, k, dtype=np.int64)
        for j in range(1, k // 2 + 1):
            for i in range(n):
                if rng.random() >= beta:
                    continue
                if deg[i] >= n - 1:
                    continue  # saturated node: no legal target left
                v = (i + j) % n
                while True:
                    w = int(rng.integers(n))
                    new = (min(i, w), max(i, w))
                    if w != i and new not in edges:
                        break
                edges.remove((min(i, v), max(i, v)))
                edges.add(new)
                deg[v] -= 1
                deg[w] += 1
        g = build_graph(sorted(edges), node_count=n)
        if _is_connected(g):
            return g
    raise GenerationFailed(f"no connected small-world graph after {_WS_ATTEMPTS} tries")


def erdos_renyi(n: int, q: float, rng: np.random.Generator) -> Graph:
    """Independent-edge random graph: each pair present with probability q.

    No connectivity enforcement; callers that need a connected arena keep
    the largest component.
    """
    if n < 1:
        raise InvalidParams(f"n must be >= 1, got {n}")
    if not 0.0 <= q <= 1.0:
        raise InvalidParams(f"q must be in [0, 1], got {q}")
    edges = []
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - 1 - i) < q)
        edges.extend((i, i + 1 + int(j)) for j in hits)
    return build_graph(edges, node_count=n)


def barabasi_albert(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Preferential-attachment graph grown from ``m`` isolated seed nodes.

    Each arriving node attaches ``m`` edges to distinct existing nodes
    chosen proportionally to current degree; while every existing node
    still has degree zero the targets are chosen uniformly.
    """
    if not 1 <= m < n:
        raise InvalidParams(f"need 1 <= m < n, got n={n}, m={m}")
    edges = []
    repeated: list[int] = []  # one entry per unit of degree
    for v in range(m, n):
        if not repeated:
            targets = [int(t) for t in rng.choice(v, size=m, replace=False)]
        else:
            chosen: set[int] = set()
            while len(chosen) < m:
                chosen.add(repeated[int(rng.integers(len(repeated)))])
            targets = sorted(chosen)
        for t in targets:
            edges.append((t, v))
        repeated.extend(targets)
        repeated.extend([v] * m)
    return build_graph(edges, node_count=n)


def directed_scale_free(
    n: int,
    alpha: float,
    beta: float,
    gamma: float,
    delta_in: float,
    delta_out: float,
    rng: np.random.Generator,
) -> Graph:
    """Heavy-tailed graph grown by degree-biased directed attachment,
    then symmetrized to a simple undirected graph.

    Three event types with probabilities ``alpha`` (new source node wired
    to an in-degree-biased target), ``beta`` (edge between existing nodes,
    out-degree-biased source to in-degree-biased target), and ``gamma``
    (new target node wired from an out-degree-biased source). Growth
    starts from a directed 3-cycle; self-loops and parallel edges vanish
    in the symmetrization.
    """
    if abs(alpha + beta + gamma - 1.0) > 1e-9:
        raise InvalidParams(
            f"alpha+beta+gamma must equal 1, got {alpha + beta + gamma}"
        )
    if min(alpha, beta, gamma) < 0 or min(delta_in, delta_out) < 0:
        raise InvalidParams("probabilities and deltas must be >= 0")
    if n < 3:
        raise InvalidParams(f"n must be >= 3, got {n}")
    if n > 3 and alpha + gamma == 0:
        raise InvalidParams("alpha + gamma = 0 can never add nodes")

    out_sources = [0, 1, 2]  # directed 3-cycle seed
    in_targets = [1, 2, 0]
    nodes = 3

    def pick(endpoints: list[int], delta: float) -> int:
        total = len(endpoints) + nodes * delta
        if total <= 0 or rng.random() < nodes * delta / total:
            return int(rng.integers(nodes))
        return endpoints[int(rng.integers(len(endpoints)))]

    while nodes < n:
        r = rng.random()
        if r < alpha:
            w = pick(in_targets, delta_in)
            v = nodes
            nodes += 1
        elif r < alpha + beta:
            v = pick(out_sources, delta_out)
            w = pick(in_targets, delta_in)
        else:
            v = pick(out_sources, delta_out)
            w = nodes
            nodes += 1
        out_sources.append(v)
        in_targets.append(w)

    undirected = {
        (min(a, b), max(a, b))
        for a, b in zip(out_sources, in_targets)
        if a != b
    }
    return build_graph(sorted(undirected), node_count=n)


def generate(family: str, params: dict, rng: np.random.Generator) -> Graph:
    """Dispatch to a family generator by name."""
    if family == "cary_tree":
        return c_ary_tree(params["c"], params["H"])
    if family == "random_regular":
        return random_regular(params["n"], params["c"], rng)
    if family == "lattice":
        return lattice(params["dims"], params.get("periodic", False))
    if family == "watts_strogatz":
        return watts_strogatz(params["n"], params["k"], params["beta"], rng)
    if family == "erdos_renyi":
        return erdos_renyi(params["n"], params["q"], rng)
    if family == "barabasi_albert":
        return barabasi_albert(params["n"], params["m"], rng)
    if family == "directed_scale_free":
        return directed_scale_free(
            params["n"],
            params["alpha"],
            params["beta"],
            params["gamma"],
            params.get("delta_in", 0.2),
            params.get("delta_out", 0.0),
            rng,
        )
    raise InvalidParams(f"unknown family {family!r}; known: {FAMILIES}")


def _candidate_params(family: str, c_target: float, H_target: int):
    """Endless per-family parameter schedule for the brute-force search.

    Sizes walk a geometric grid so the cost of overshooting stays bounded;
    random families get a few repeats per size.
    """
    if family == "cary_tree":
        yield {"c": max(2, round(c_target)), "H": H_target}
        return
    if family == "lattice":
        ndim = max(1, round(c_target / 2))
        side = 3
        while True:
            yield {"dims": [side] * ndim, "periodic": True}
            side += 1
    c_round = max(2, round(c_target))
    n = max(8, c_round + 2)
    while True:
        if family == "random_regular":
            size = n + 1 if (n * c_round) % 2 else n
            reps = [{"n": size, "c": c_round}] * 2
        elif family == "erdos_renyi":
            reps = [{"n": n, "q": min(1.0, c_target / (n - 1))}] * 3
        elif family == "watts_strogatz":
            k = max(2, 2 * round(c_target / 2))
            size = max(n, k + 2)
            reps = [{"n": size, "k": k, "beta": b} for b in (0.1, 0.5, 1.0)]
        elif family == "barabasi_albert":
            m = max(1, round(c_target / 2))
            reps = [{"n": max(n, m + 2), "m": m}] * 3
        elif family == "directed_scale_free":
            ag = min(1.0, max(0.05, 2.0 / c_target))
            reps = [
                {
                    "n": n,
                    "alpha": 0.85 * ag,
                    "beta": 1.0 - ag,
                    "gamma": 0.15 * ag,
                    "delta_in": 0.2,
                    "delta_out": 0.0,
                }
            ] * 3
        else:
            raise InvalidParams(f"unknown family {family!r}; known: {FAMILIES}")
        yield from reps
        n = max(n + 1, int(round(n * 1.35)))


def find_graph_with_spec(
    family: str,
    c_target: float,
    H_target: int,
    tol_c: float,
    budget: int,
    rng: np.random.Generator,
) -> tuple[Graph, GeneratorSpec]:
    """Like :func:`find_graph_with` but also returns the winning spec."""
    if budget < 1:
        raise InvalidParams(f"budget must be >= 1, got {budget}")
    if family == "cary_tree":
        # the tree is parameterized directly by (c, H); no search needed
        params = {"c": max(2, round(c_target)), "H": H_target}
        return c_ary_tree(**params), GeneratorSpec(family, params)
    attempts = 0
    for params in _candidate_params(family, c_target, H_target):
        if attempts >= budget:
            break
        attempts += 1
        try:
            g = generate(family, params, rng)
        except (GenerationFailed, InvalidParams):
            continue
        if family == "erdos_renyi":
            g, _ = largest_component(g)
            if g.node_count < 2:
                continue
        if abs(degree_stats(g).mean - c_target) > tol_c:
            continue
        if half_diameter_H(g) == H_target:
            return g, GeneratorSpec(family, dict(params))
    raise NotFound(
        f"no {family} graph with mean degree ~{c_target} and H={H_target} "
        f"within budget {budget}"
    )


def find_graph_with(
    family: str,
    c_target: float,
    H_target: int,
    tol_c: float,
    budget: int,
    rng: np.random.Generator,
) -> Graph:
    """Brute-force the generation parameters until a graph hits the target
    mean degree (within ``tol_c``) and half-diameter ``H_target``.

    Raises
    ------
    NotFound
        When the attempt budget runs out first.
    """
    g, _ = find_graph_with_spec(family, c_target, H_target, tol_c, budget, rng)
    return g
