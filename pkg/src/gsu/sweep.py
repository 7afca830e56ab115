"""Averaged weight-ratio grids over (u, p) and over (c, H).

Every (cell, run) gets its own RNG stream derived from the master seed,
so grids are reproducible under any worker count or scheduling. On the
(u, p) plane the stream key deliberately excludes the u index: the walk
trajectory never depends on the extra-weight magnitude, so sharing trials
across the u axis makes the p = 0 column exactly u-invariant and smooths
the u dependence elsewhere (common random numbers).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import AllCensored, GenerationFailed, NotFound
from .generate import find_graph_with_spec
from .graphs import Graph
from .searchers import RunOutcome, simulation_run
from .uncertainty import UncertaintyModel

__all__ = [
    "CellStats",
    "SweepGrid",
    "RngStream",
    "derive_rng",
    "average_ratio",
    "sweep_up",
    "sweep_ch",
]

_PLANE_CODE = {"up": 1, "ch": 2}
_GEN_RUN_CODE = 0xFFFFFFFF  # run slot reserved for fixed-per-cell generation

UNRELIABLE_CENSORED_FRACTION = 0.01


@dataclass(frozen=True)
class RngStream:
    """Reproducible stream id: master seed plus a derivation path."""

    master_seed: int
    path: tuple[int, ...]

    def generator(self) -> np.random.Generator:
        key = (self.master_seed & 0xFFFFFFFFFFFFFFFF,) + self.path
        return np.random.default_rng(np.random.SeedSequence(key))


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    return RngStream(master_seed, tuple(int(x) for x in path)).generator()


@dataclass(frozen=True)
class CellStats:
    mean_ratio: float
    std_err: float
    mean_wd: float
    mean_wg: float
    runs: int
    censored: int
    ratio_of_means: float
    unreliable: bool


@dataclass(frozen=True)
class SweepGrid:
    """2-D grid of averaged trial statistics with full provenance.

    ``cells[ix][iy]`` aligns with ``x_axis[ix]`` and ``y_axis[iy]``; a None
    cell was skipped, with the reason under ``failures[(ix, iy)]``.
    """

    plane: str
    x_axis: tuple[float, ...]
    y_axis: tuple[float, ...]
    cells: tuple[tuple[CellStats | None, ...], ...]
    master_seed: int
    provenance: dict = field(compare=False)
    failures: dict = field(compare=False, default_factory=dict)


def average_ratio(outcomes: list[RunOutcome]) -> CellStats:
    """Reduce one cell's trials; censored runs are counted but excluded.

    ``mean_ratio`` averages the per-run weight ratios; ``ratio_of_means``
    divides the average greedy weight by the average prior-path weight
    (the quantity the closed-form theory bounds).
    """
    censored = sum(1 for o in outcomes if o.censored)
    kept = [o for o in outcomes if not o.censored]
    if not kept:
        raise AllCensored(f"all {len(outcomes)} runs hit the step cap")
    ratios = np.array([o.ratio for o in kept])
    w_d = np.array([o.w_d for o in kept])
    w_g = np.array([o.w_g for o in kept])
    return CellStats(
        mean_ratio=float(ratios.mean()),
        std_err=float(ratios.std(ddof=1) / np.sqrt(len(kept))) if len(kept) > 1 else 0.0,
        mean_wd=float(w_d.mean()),
        mean_wg=float(w_g.mean()),
        runs=len(outcomes),
        censored=censored,
        ratio_of_means=float(w_g.mean() / w_d.mean()),
        unreliable=censored > UNRELIABLE_CENSORED_FRACTION * len(outcomes),
    )


def _up_cell(task):
    g, u, p, runs, master_seed, iy, max_steps = task
    model = UncertaintyModel(u=u, p=p)
    outcomes = [
        simulation_run(
            g, model, derive_rng(master_seed, _PLANE_CODE["up"], iy, irun), max_steps
        )
        for irun in range(runs)
    ]
    try:
        return average_ratio(outcomes), None
    except AllCensored as e:
        return None, str(e)


def sweep_up(
    g: Graph,
    u_values,
    p_values,
    runs: int,
    master_seed: int,
    max_steps: int | None = None,
    workers: int = 1,
) -> SweepGrid:
    """Ratio statistics over a (u, p) grid on one fixed graph."""
    u_values = [float(u) for u in u_values]
    p_values = [float(p) for p in p_values]
    tasks = [
        (g, u, p, runs, master_seed, iy, max_steps)
        for u in u_values
        for iy, p in enumerate(p_values)
    ]
    results = _run_tasks(_up_cell, tasks, workers)
    cells, failures = _collect(results, len(u_values), len(p_values))
    return SweepGrid(
        plane="up",
        x_axis=tuple(u_values),
        y_axis=tuple(p_values),
        cells=cells,
        master_seed=master_seed,
        provenance={
            "graph": {"nodes": g.node_count, "edges": g.edge_count},
            "runs": runs,
            "max_steps": max_steps,
        },
        failures=failures,
    )


def _ch_cell(task):
    (family, u, p, c, H, runs, master_seed, ix, iy, max_steps,
     gen_budget, tol_c, fixed_graph) = task
    model = UncertaintyModel(u=u, p=p)
    code = _PLANE_CODE["ch"]
    try:
        fixed = None
        if fixed_graph:
            rng = derive_rng(master_seed, code, ix, iy, _GEN_RUN_CODE)
            fixed, _ = find_graph_with_spec(family, c, H, tol_c, gen_budget, rng)
        outcomes = []
        for irun in range(runs):
            rng = derive_rng(master_seed, code, ix, iy, irun)
            if fixed is None:
                arena, _ = find_graph_with_spec(family, c, H, tol_c, gen_budget, rng)
            else:
                arena = fixed
            outcomes.append(simulation_run(arena, model, rng, max_steps))
        return average_ratio(outcomes), None
    except (NotFound, GenerationFailed, AllCensored) as e:
        return None, str(e)


def sweep_ch(
    family: str,
    u: float,
    p: float,
    c_values,
    H_values,
    runs: int,
    master_seed: int,
    max_steps: int | None = None,
    gen_budget: int = 200,
    tol_c: float = 0.25,
    fixed_graph_per_cell: bool = False,
    workers: int = 1,
) -> SweepGrid:
    """Ratio statistics over a (c, H) grid with a fresh graph per run.

    Each run regenerates a graph hitting the cell's (c, H) target; set
    ``fixed_graph_per_cell`` to reuse one graph per cell instead (cheaper,
    but no longer averages over the graph ensemble).
    """
    c_values = [float(c) for c in c_values]
    H_values = [int(H) for H in H_values]
    tasks = [
        (family, u, p, c, H, runs, master_seed, ix, iy, max_steps,
         gen_budget, tol_c, fixed_graph_per_cell)
        for ix, c in enumerate(c_values)
        for iy, H in enumerate(H_values)
    ]
    results = _run_tasks(_ch_cell, tasks, workers)
    cells, failures = _collect(results, len(c_values), len(H_values))
    return SweepGrid(
        plane="ch",
        x_axis=tuple(c_values),
        y_axis=tuple(float(H) for H in H_values),
        cells=cells,
        master_seed=master_seed,
        provenance={
            "family": family,
            "model": {"u": u, "p": p},
            "runs": runs,
            "max_steps": max_steps,
            "gen_budget": gen_budget,
            "tol_c": tol_c,
            "fixed_graph_per_cell": fixed_graph_per_cell,
        },
        failures=failures,
    )


def _run_tasks(fn, tasks, workers: int):
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _collect(results, nx: int, ny: int):
    cells = []
    failures = {}
    it = iter(results)
    for ix in range(nx):
        row = []
        for iy in range(ny):
            stats, reason = next(it)
            row.append(stats)
            if reason is not None:
                failures[(ix, iy)] = reason
        cells.append(tuple(row))
    return tuple(cells), failures
