"""Command-line surface: generate, simulate, sweep, theory, mfpt.

Exit codes: 0 success, 2 invalid parameters, 3 I/O error, 4 computation
error (disconnected in strict mode, search/generation failure, step-cap
exhaustion). Output is byte-stable for fixed inputs and seeds; the
``--workers`` flag (default from ``GSU_WORKERS``) never changes bytes.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import generate as gen
from .errors import (
    Disconnected,
    GsuError,
    InvalidEdge,
    InvalidParams,
    NoInteriorOptimum,
)
from .graphs import (
    bfs_distances,
    degree_stats,
    diameter,
    half_diameter_H,
    largest_component,
)
from .io import grid_to_csv, read_edge_list, stable_json, write_edge_list
from .mfpt import mfpt_linear_solve, mfpt_monte_carlo, mfpt_tree_cluster_sum
from .searchers import simulation_run
from .sweep import average_ratio, derive_rng, sweep_ch, sweep_up
from .theory import (
    critical_curve,
    critical_u,
    ln_z_tilde,
    mfpt_cary_approx,
    mfpt_cary_exact,
    optimal_p,
    z_star,
    z_tilde,
)
from .uncertainty import UncertaintyModel

_FAMILY_ALIASES = {
    "cary": "cary_tree",
    "regular": "random_regular",
    "lattice": "lattice",
    "ws": "watts_strogatz",
    "er": "erdos_renyi",
    "ba": "barabasi_albert",
    "dsf": "directed_scale_free",
}

_SIM_STREAM = 0  # plane code reserved for single-graph simulate runs


def _parse_axis(text: str) -> list[float]:
    """Axis grammar: 'a,b,c' or inclusive 'start:stop:step'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidParams(f"range axis must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise InvalidParams(f"axis step must be > 0, got {step}")
        values = []
        k = 0
        while True:
            v = start + k * step
            if v > stop + 1e-9 * max(1.0, step):
                break
            values.append(v)
            k += 1
        return values
    return [float(p) for p in text.split(",")]


def _parse_decades(text: str) -> list[float]:
    lo, hi = (int(p) for p in text.split(":"))
    return [10.0**d for d in range(lo, hi + 1)]


def _family_params(args) -> tuple[str, dict]:
    family = _FAMILY_ALIASES[args.family]
    if family == "cary_tree":
        p = {"c": _need(args, "c", int), "H": _need(args, "H", int)}
    elif family == "random_regular":
        p = {"n": _need(args, "n", int), "c": _need(args, "c", int)}
    elif family == "lattice":
        dims = [int(d) for d in _need(args, "dims", str).split(",")]
        p = {"dims": dims, "periodic": bool(args.periodic)}
    elif family == "watts_strogatz":
        p = {
            "n": _need(args, "n", int),
            "k": _need(args, "k", int),
            "beta": _need(args, "beta", float),
        }
    elif family == "erdos_renyi":
        p = {"n": _need(args, "n", int), "q": _need(args, "q", float)}
    elif family == "barabasi_albert":
        p = {"n": _need(args, "n", int), "m": _need(args, "m", int)}
    else:
        p = {
            "n": _need(args, "n", int),
            "alpha": _need(args, "alpha", float),
            "beta": _need(args, "beta", float),
            "gamma": _need(args, "gamma", float),
            "delta_in": args.delta_in,
            "delta_out": args.delta_out,
        }
    return family, p


def _need(args, name: str, cast):
    value = getattr(args, name, None)
    if value is None:
        raise InvalidParams(f"--{name.replace('_', '-')} is required for this family")
    return cast(value)


def cmd_generate(args) -> int:
    family, params = _family_params(args)
    rng = np.random.default_rng(args.seed)
    g = gen.generate(family, params, rng)
    write_edge_list(args.output, g)
    connected = g.node_count == 1 or bool((bfs_distances(g, 0) >= 0).all())
    dia = diameter(g) if connected else None
    stats = degree_stats(g)
    sys.stdout.write(
        stable_json(
            {
                "family": family,
                "params": params,
                "seed": args.seed,
                "output": str(args.output),
                "nodes": g.node_count,
                "edges": g.edge_count,
                "connected": connected,
                "diameter": dia,
                "H": None if dia is None else (dia + 1) // 2,
                "degree": {
                    "mean": stats.mean,
                    "median": stats.median,
                    "mode": stats.mode,
                    "max": stats.max,
                    "histogram": {str(k): v for k, v in sorted(stats.histogram.items())},
                },
            }
        )
    )
    return 0


def _load_graph(args):
    g, original = read_edge_list(args.graph)
    relabeled = original != list(range(g.node_count))
    restricted = False
    if g.node_count > 1 and (bfs_distances(g, 0) < 0).any():
        if args.strict:
            raise Disconnected(f"{args.graph} is disconnected (strict mode)")
        g, mapping = largest_component(g)
        original = [original[old] for old in sorted(mapping)]
        restricted = True
    return g, original, relabeled, restricted


def cmd_simulate(args) -> int:
    g, original, relabeled, restricted = _load_graph(args)
    model = UncertaintyModel(u=args.u, p=args.p)
    outcomes = [
        simulation_run(g, model, derive_rng(args.seed, _SIM_STREAM, irun), args.max_steps)
        for irun in range(args.runs)
    ]
    cell = average_ratio(outcomes)
    payload = {
        "mean_ratio": cell.mean_ratio,
        "std_err": cell.std_err,
        "ratio_of_means": cell.ratio_of_means,
        "mean_wd": cell.mean_wd,
        "mean_wg": cell.mean_wg,
        "runs": cell.runs,
        "censored": cell.censored,
        "unreliable": cell.unreliable,
        "seed": args.seed,
        "u": args.u,
        "p": args.p,
        "nodes": g.node_count,
        "edges": g.edge_count,
        "restricted_to_largest_component": restricted,
        "node_relabeling": {"original_ids": original} if (relabeled or restricted) else None,
    }
    sys.stdout.write(stable_json(payload))
    return 0


def cmd_sweep(args) -> int:
    workers = args.workers
    if args.plane == "up":
        if args.graph is None:
            raise InvalidParams("--graph is required for --plane up")
        g, _, _, restricted = _load_graph(args)
        u_values = _parse_decades(args.u_decades) if args.u_decades else _parse_axis(args.u)
        grid = sweep_up(
            g,
            u_values,
            _parse_axis(args.p),
            runs=args.runs,
            master_seed=args.seed,
            max_steps=args.max_steps,
            workers=workers,
        )
    else:
        grid = sweep_ch(
            _FAMILY_ALIASES[args.family],
            u=float(args.u),
            p=float(args.p),
            c_values=[int(c) for c in _parse_axis(args.c)],
            H_values=[int(h) for h in _parse_axis(args.H)],
            runs=args.runs,
            master_seed=args.seed,
            max_steps=args.max_steps,
            gen_budget=args.gen_budget,
            tol_c=args.tol_c,
            fixed_graph_per_cell=args.fixed_graph_per_cell,
            workers=workers,
        )
    csv_text = grid_to_csv(grid)
    if args.output:
        Path(args.output).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    for key, reason in grid.failures.items():
        sys.stderr.write(f"cell {key}: {reason}\n")
    return 0


def cmd_theory(args) -> int:
    if args.critical_u:
        H = _need(args, "H", int)
        sys.stdout.write(stable_json({"H": H, "u_c": critical_u(H)}))
        return 0
    if args.critical_curve:
        fixed = (
            {"c": _need(args, "c", float), "H": _need(args, "H", int)}
            if args.plane == "up"
            else {"u": _need(args, "u", float), "p": _need(args, "p", float)}
        )
        curve = critical_curve(
            args.plane,
            fixed,
            _parse_axis(args.x),
            _parse_axis(args.y),
            tol=args.tol,
        )
        sys.stdout.write(
            stable_json(
                {
                    "plane": curve.plane,
                    "fixed": curve.fixed_params,
                    "shape": curve.shape,
                    "points": [[x, y] for x, y in curve.points],
                }
            )
        )
        return 0
    if args.grid:
        fixed = (
            {"c": _need(args, "c", float), "H": _need(args, "H", int)}
            if args.plane == "up"
            else {"u": _need(args, "u", float), "p": _need(args, "p", float)}
        )
        lines = ["x,y,z_tilde,ln_z"]
        for x in _parse_axis(args.x):
            for y in _parse_axis(args.y):
                if args.plane == "up":
                    zt = z_tilde(x, y, fixed["c"], fixed["H"])
                    lz = ln_z_tilde(x, y, fixed["c"], fixed["H"])
                else:
                    zt = z_tilde(fixed["u"], fixed["p"], y, x)
                    lz = ln_z_tilde(fixed["u"], fixed["p"], y, x)
                lines.append(
                    f"{format(x, '.17g')},{format(y, '.17g')},"
                    f"{format(zt, '.17g')},{format(lz, '.17g')}"
                )
        text = "\n".join(lines) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return 0

    u = _need(args, "u", float)
    p = _need(args, "p", float)
    c = _need(args, "c", float)
    H = _need(args, "H", int)
    payload = {
        "u": u,
        "p": p,
        "c": c,
        "H": H,
        "z_tilde": z_tilde(u, p, c, H),
        "ln_z": ln_z_tilde(u, p, c, H),
        "expected_xi": u * p,
        "expected_eps": u * p**c,
        "u_c": critical_u(H),
    }
    try:
        payload["p_star"] = optimal_p(u, c)
        payload["z_star"] = z_star(u, c, H)
        payload["p_star_reason"] = None
    except NoInteriorOptimum as e:
        payload["p_star"] = None
        payload["z_star"] = None
        payload["p_star_reason"] = str(e)
    if args.L is not None:
        payload["L"] = args.L
        payload["mfpt_cary_exact"] = mfpt_cary_exact(c, H, args.L)
        payload["mfpt_cary_approx"] = mfpt_cary_approx(c, H, args.L)
    sys.stdout.write(stable_json(payload))
    return 0


def _backbone_node_at_depth(c: int, L: int) -> int:
    # first-child chain of the breadth-first numbering
    return (c**L - 1) // (c - 1)


def cmd_mfpt(args) -> int:
    oracles = args.oracle.split(",")
    known = {"formula", "solve", "cluster", "mc"}
    unknown = set(oracles) - known
    if unknown:
        raise InvalidParams(f"unknown oracle(s) {sorted(unknown)}; known: {sorted(known)}")
    values: dict[str, float] = {}
    payload: dict = {}
    if args.cary:
        c = _need(args, "c", int)
        H = _need(args, "H", int)
        L = _need(args, "L", int)
        if not 1 <= L <= H:
            raise InvalidParams(f"need 1 <= L <= H, got L={L}, H={H}")
        g = gen.c_ary_tree(c, H)
        s, t = 0, _backbone_node_at_depth(c, L)
        payload.update({"mode": "cary", "c": c, "H": H, "L": L, "s": s, "t": t})
        if "formula" in oracles:
            values["formula"] = float(mfpt_cary_exact(c, H, L))
    else:
        if args.graph is None:
            raise InvalidParams("either --cary or --graph is required")
        g, _ = read_edge_list(args.graph)
        s, t = _need(args, "s", int), _need(args, "t", int)
        payload.update({"mode": "graph", "graph": str(args.graph), "s": s, "t": t})
        if "formula" in oracles:
            raise InvalidParams("the closed-form oracle needs --cary tree parameters")
    if "solve" in oracles:
        values["solve"] = float(mfpt_linear_solve(g, t).values[s])
    if "cluster" in oracles:
        values["cluster"] = float(mfpt_tree_cluster_sum(g, s, t))
    if "mc" in oracles:
        mean, std_err = mfpt_monte_carlo(g, s, t, args.runs, np.random.default_rng(args.seed))
        payload["mc"] = {"mean": mean, "std_err": std_err, "runs": args.runs}
        values["mc"] = mean
    rel_err = {}
    names = sorted(values)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            denom = max(abs(values[a]), abs(values[b]), 1e-300)
            rel_err[f"{a}_vs_{b}"] = abs(values[a] - values[b]) / denom
    payload["values"] = values
    payload["pairwise_rel_err"] = rel_err
    sys.stdout.write(stable_json(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsu",
        description="Greedy-vs-global graph search under edge-weight uncertainty",
    )
    default_workers = int(os.environ.get("GSU_WORKERS", "1"))
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a graph family instance")
    g.add_argument("--family", required=True, choices=sorted(_FAMILY_ALIASES))
    g.add_argument("--c", type=float)
    g.add_argument("--H", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--q", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--alpha", type=float)
    g.add_argument("--gamma", type=float)
    g.add_argument("--delta-in", dest="delta_in", type=float, default=0.2)
    g.add_argument("--delta-out", dest="delta_out", type=float, default=0.0)
    g.add_argument("--dims", type=str)
    g.add_argument("--periodic", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("simulate", help="averaged head-to-head trials on one graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--u", type=float, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--runs", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-steps", dest="max_steps", type=int, default=None)
    s.add_argument("--strict", action="store_true")
    s.set_defaults(func=cmd_simulate)

    w = sub.add_parser("sweep", help="averaged ratio grid over (u,p) or (c,H)")
    w.add_argument("--plane", required=True, choices=("up", "ch"))
    w.add_argument("--graph")
    w.add_argument("--family", choices=sorted(_FAMILY_ALIASES))
    w.add_argument("--u", type=str)
    w.add_argument("--u-decades", dest="u_decades", type=str)
    w.add_argument("--p", type=str)
    w.add_argument("--c", type=str)
    w.add_argument("--H", type=str)
    w.add_argument("--runs", type=int, default=1000)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--max-steps", dest="max_steps", type=int, default=None)
    w.add_argument("--gen-budget", dest="gen_budget", type=int, default=200)
    w.add_argument("--tol-c", dest="tol_c", type=float, default=0.25)
    w.add_argument("--fixed-graph-per-cell", action="store_true")
    w.add_argument("--strict", action="store_true")
    w.add_argument("--workers", type=int, default=default_workers)
    w.add_argument("-o", "--output")
    w.set_defaults(func=cmd_sweep)

    t = sub.add_parser("theory", help="closed-form quantities and level sets")
    t.add_argument("--u", type=float)
    t.add_argument("--p", type=float)
    t.add_argument("--c", type=float)
    t.add_argument("--H", type=int)
    t.add_argument("--L", type=int)
    t.add_argument("--critical-u", dest="critical_u", action="store_true")
    t.add_argument("--critical-curve", dest="critical_curve", action="store_true")
    t.add_argument("--grid", action="store_true")
    t.add_argument("--plane", choices=("up", "ch"), default="up")
    t.add_argument("--x", type=str)
    t.add_argument("--y", type=str)
    t.add_argument("--tol", type=float, default=1e-10)
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_theory)

    m = sub.add_parser("mfpt", help="first-passage oracles and cross-checks")
    m.add_argument("--cary", action="store_true")
    m.add_argument("--c", type=int)
    m.add_argument("--H", type=int)
    m.add_argument("--L", type=int)
    m.add_argument("--graph")
    m.add_argument("--s", type=int)
    m.add_argument("--t", type=int)
    m.add_argument("--oracle", required=True)
    m.add_argument("--runs", type=int, default=10000)
    m.add_argument("--seed", type=int, default=0)
    m.set_defaults(func=cmd_mfpt)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParams, InvalidEdge) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"i/o error: {e}\n")
        return 3
    except GsuError as e:
        sys.stderr.write(f"error: {e}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
