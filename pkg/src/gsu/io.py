"""Edge-list files, grid CSV emission, and byte-stable JSON.

Edge-list grammar: one ``i j`` pair of non-negative integers per line,
``#`` starts a comment line, blank lines are ignored. Sparse node ids are
compacted to ``0..n-1`` in ascending order on read.

Floats in CSV are written with 17 significant digits so every value
round-trips exactly; JSON uses Python's shortest round-trip repr. Both
are byte-stable for fixed inputs.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import InvalidEdge
from .graphs import Graph, build_graph
from .sweep import SweepGrid

__all__ = [
    "read_edge_list",
    "write_edge_list",
    "grid_to_csv",
    "stable_json",
]

GRID_CSV_HEADER = "x,y,mean_ratio,ln_mean_ratio,std_err,ratio_of_means,runs,censored"

SCHEMA_VERSION = "1"


def read_edge_list(path) -> tuple[Graph, list[int]]:
    """Parse an edge-list file.

    Returns the graph and the new->original id table (``original[new]``
    is the id the file used). Ids are compacted in ascending order, so the
    table is the identity whenever the file already used ``0..n-1``.
    """
    raw_edges: list[tuple[int, int]] = []
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        parts = body.split()
        if len(parts) != 2:
            raise InvalidEdge(f"{path}:{lineno}: expected 'i j', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise InvalidEdge(f"{path}:{lineno}: non-integer id in {line!r}") from e
        if a < 0 or b < 0:
            raise InvalidEdge(f"{path}:{lineno}: negative id in {line!r}")
        raw_edges.append((a, b))
    original = sorted({i for e in raw_edges for i in e})
    compact = {old: new for new, old in enumerate(original)}
    edges = [(compact[a], compact[b]) for a, b in raw_edges]
    node_count = max(len(original), 1)
    return build_graph(edges, node_count=node_count), original


def write_edge_list(path, g: Graph) -> None:
    """Write one ``i j`` line per undirected edge, ascending, no comments."""
    lines = [f"{i} {j}" for i, j in g.edges()]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def grid_to_csv(grid: SweepGrid) -> str:
    """Serialize a sweep grid, one row per cell in x-major order.

    Absent cells (generation failed, all runs censored) keep their row
    with ``nan`` statistics and zero run counts.
    """
    rows = [GRID_CSV_HEADER]
    for ix, x in enumerate(grid.x_axis):
        for iy, y in enumerate(grid.y_axis):
            cell = grid.cells[ix][iy]
            if cell is None:
                rows.append(f"{_fmt(x)},{_fmt(y)},nan,nan,nan,nan,0,0")
                continue
            rows.append(
                ",".join(
                    (
                        _fmt(x),
                        _fmt(y),
                        _fmt(cell.mean_ratio),
                        _fmt(math.log(cell.mean_ratio)),
                        _fmt(cell.std_err),
                        _fmt(cell.ratio_of_means),
                        str(cell.runs),
                        str(cell.censored),
                    )
                )
            )
    return "\n".join(rows) + "\n"


def stable_json(payload: dict) -> str:
    """Deterministic JSON for CLI outputs; adds the schema version."""
    body = {"schema_version": SCHEMA_VERSION}
    body.update(payload)
    return json.dumps(body, sort_keys=True, indent=2) + "\n"
