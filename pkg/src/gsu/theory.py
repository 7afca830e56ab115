"""Closed-form stability theory for greedy-vs-global search.

The central quantity is the weight-ratio estimate

    z_tilde(u, p, c, H) = 2 c^H (u p^c + 1) / (u p + 1)

comparing a stochastic greedy searcher against a prior shortest-path
searcher on a graph with connectivity ``c`` and half-diameter ``H`` under
the two-point extra-weight model ``(u, p)``. Values below 1 mean the
greedy searcher wins on average. The module also provides the exact and
asymptotic mean first passage times on complete c-ary trees that the
estimate is built from, the optimal realization probability, the value of
the estimate at that optimum, the critical extra weight below which the
global searcher dominates everywhere, and level-set extraction of the
``z_tilde = 1`` boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, NoInteriorOptimum

__all__ = [
    "TheoryPoint",
    "CriticalCurve",
    "z_tilde",
    "ln_z_tilde",
    "theory_point",
    "mfpt_cary_exact",
    "mfpt_cary_approx",
    "optimal_p",
    "z_star",
    "critical_u",
    "z_general",
    "critical_curve",
]


@dataclass(frozen=True)
class TheoryPoint:
    """One evaluation of the closed-form ratio estimate."""

    u: float
    p: float
    c: float
    H: int
    z_tilde: float
    ln_z: float


@dataclass(frozen=True)
class CriticalCurve:
    """Level set ``z_tilde = 1`` extracted column-by-column.

    ``plane`` is ``"up"`` (columns at fixed u, roots located along p) or
    ``"ch"`` (columns at fixed H, roots located along c). ``points`` holds
    (column coordinate, root ordinate) pairs.
    """

    plane: str
    fixed_params: dict
    points: tuple[tuple[float, float], ...]
    shape: str  # "empty" | "monotonic" | "bell"


def z_tilde(u, p, c, H):
    """Ratio estimate ``2 c^H (u p^c + 1) / (u p + 1)``.

    Accepts scalars or numpy arrays; ``c`` may be any real >= 2 (the
    closed form treats connectivity as continuous).
    """
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    c = np.asarray(c, dtype=float)
    H = np.asarray(H, dtype=float)
    out = 2.0 * c**H * (u * p**c + 1.0) / (u * p + 1.0)
    return out if out.ndim else float(out)


def ln_z_tilde(u, p, c, H):
    """``log`` of :func:`z_tilde`, computed in log space for precision."""
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    c = np.asarray(c, dtype=float)
    H = np.asarray(H, dtype=float)
    out = math.log(2.0) + H * np.log(c) + np.log1p(u * p**c) - np.log1p(u * p)
    return out if out.ndim else float(out)


def theory_point(u: float, p: float, c: float, H: int) -> TheoryPoint:
    if u < 0 or not 0.0 <= p <= 1.0 or c < 2 or H < 1:
        raise InvalidParams(f"invalid theory point (u={u}, p={p}, c={c}, H={H})")
    return TheoryPoint(
        u=float(u),
        p=float(p),
        c=float(c),
        H=int(H),
        z_tilde=z_tilde(u, p, c, H),
        ln_z=ln_z_tilde(u, p, c, H),
    )


def mfpt_cary_exact(c, H: int, L: int):
    """Exact mean first passage time on a complete c-ary tree of height
    ``H``, from the root to the backbone node at depth ``L``:

        L (2 c^{H+1}/(c-1) - 1) - 2 c^{H+1} (1 - c^{-L}) / (c-1)^2
    """
    if L < 0 or L > H:
        raise InvalidParams(f"L must lie in [0, H]; got L={L}, H={H}")
    if c < 2:
        raise InvalidParams(f"c must be >= 2, got {c}")
    c = float(c)
    top = 2.0 * c ** (H + 1)
    return L * (top / (c - 1.0) - 1.0) - top * (1.0 - c**-L) / (c - 1.0) ** 2


def mfpt_cary_approx(c, H: int, L: int):
    """High-connectivity approximation ``2 L c^H`` of the tree passage time."""
    return 2.0 * L * float(c) ** H


def optimal_p(u: float, c: float) -> float:
    """Realization probability minimizing the ratio estimate for large u:

        p* = [u (c - 1)]^{-1/c}

    Only valid as an interior optimum when ``u (c - 1) > 1``.

    Raises
    ------
    NoInteriorOptimum
        If ``u (c - 1) <= 1`` (the formula would give p* >= 1).
    """
    if c < 2:
        raise InvalidParams(f"c must be >= 2, got {c}")
    base = u * (c - 1.0)
    if base <= 1.0:
        raise NoInteriorOptimum(f"u(c-1) = {base} <= 1: no optimum inside (0, 1)")
    return base ** (-1.0 / c)


def z_star(u: float, c: float, H: int) -> float:
    """Ratio estimate at the optimal probability, ``z_tilde(u, p*, c, H)``.

    Evaluated by direct substitution of :func:`optimal_p`, which is
    unambiguous and exactly consistent with the two building blocks.
    """
    return z_tilde(u, optimal_p(u, c), c, H)


def critical_u(H: int) -> float:
    """Critical extra weight ``H e^{H+1}``.

    For ``u`` below this value the ratio estimate has no interior extremum
    in (p, c), so the prior global searcher wins for every combination of
    realization probability and connectivity.
    """
    if H < 1:
        raise InvalidParams(f"H must be >= 1, got {H}")
    return H * math.exp(H + 1)


def z_general(E_eps: float, E_xi: float, mfpt: float, L: int) -> float:
    """Distribution-agnostic weight ratio ``(E_eps + 1) mfpt / (L (1 + E_xi))``.

    ``E_eps`` is the mean minimum extra weight seen per greedy step,
    ``E_xi`` the mean extra weight on a single edge observation, ``mfpt``
    the expected greedy step count, and ``L`` the hop length of the prior
    shortest path.
    """
    if L < 1:
        raise InvalidParams(f"L must be >= 1, got {L}")
    if mfpt < 0:
        raise InvalidParams(f"mfpt must be >= 0, got {mfpt}")
    return (E_eps + 1.0) * mfpt / (L * (1.0 + E_xi))


def _column_fn(plane: str, fixed: dict, x: float):
    if plane == "up":
        c, H = fixed["c"], fixed["H"]
        return lambda y: ln_z_tilde(x, y, c, H)
    if plane == "ch":
        u, p = fixed["u"], fixed["p"]
        return lambda y: ln_z_tilde(u, p, y, x)
    raise InvalidParams(f"plane must be 'up' or 'ch', got {plane!r}")


def _bisect(f, lo: float, hi: float, flo: float, tol: float) -> float:
    # keep the endpoint with sign opposite to flo; <= 60 halvings reach
    # double precision on any bracket we are handed
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_curve(
    plane: str,
    fixed: dict,
    x_grid,
    y_grid,
    tol: float = 1e-10,
) -> CriticalCurve:
    """Extract the ``z_tilde = 1`` level set over a rectangular grid.

    For each column coordinate in ``x_grid`` the sign changes of
    ``ln z_tilde`` along ``y_grid`` are bracketed and refined by bisection
    to ``|ln z_tilde| <= tol``. A column counts as two-rooted only when
    both flanking grid values exceed the tolerance in magnitude, which
    keeps tangencies from being double counted.

    Shape: ``empty`` when no column has a root, ``bell`` when some column
    has two or more, ``monotonic`` otherwise.
    """
    x_grid = np.asarray(x_grid, dtype=float)
    y_grid = np.asarray(y_grid, dtype=float)
    if tol <= 0:
        raise InvalidParams("tol must be > 0")
    if x_grid.size < 1 or y_grid.size < 2:
        raise InvalidParams("x_grid needs >= 1 value, y_grid >= 2")
    if np.any(np.diff(x_grid) <= 0) or np.any(np.diff(y_grid) <= 0):
        raise InvalidParams("grids must be strictly increasing")

    points: list[tuple[float, float]] = []
    roots_per_column: list[int] = []
    for x in x_grid:
        f = _column_fn(plane, fixed, float(x))
        fy = np.array([f(float(y)) for y in y_grid])
        col_roots: list[float] = []
        for i, y in enumerate(y_grid):
            if abs(fy[i]) <= tol:
                col_roots.append(float(y))
        for i in range(y_grid.size - 1):
            if fy[i] * fy[i + 1] < 0 and abs(fy[i]) > tol and abs(fy[i + 1]) > tol:
                col_roots.append(
                    _bisect(f, float(y_grid[i]), float(y_grid[i + 1]), fy[i], tol)
                )
        col_roots.sort()
        roots_per_column.append(len(col_roots))
        points.extend((float(x), r) for r in col_roots)

    if not points:
        shape = "empty"
    elif max(roots_per_column) >= 2:
        shape = "bell"
    else:
        shape = "monotonic"
    return CriticalCurve(
        plane=plane,
        fixed_params=dict(fixed),
        points=tuple(points),
        shape=shape,
    )
