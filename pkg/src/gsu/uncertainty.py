"""Two-point extra-weight model for edge costs.

Each observation of an edge draws an independent extra weight: ``u`` with
probability ``p``, otherwise 0. The draw is repeated on every observation,
never cached, so revisiting an edge sees fresh noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams

__all__ = ["UncertaintyModel", "sample_xi", "expected_xi", "expected_eps"]


@dataclass(frozen=True)
class UncertaintyModel:
    """Extra-weight distribution: value ``u`` realized with probability ``p``."""

    u: float
    p: float

    def __post_init__(self):
        if self.u < 0:
            raise InvalidParams(f"u must be >= 0, got {self.u}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidParams(f"p must be in [0, 1], got {self.p}")


def sample_xi(m: UncertaintyModel, rng: np.random.Generator) -> float:
    """One fresh draw of the extra weight."""
    return m.u if rng.random() < m.p else 0.0


def expected_xi(m: UncertaintyModel) -> float:
    """Mean extra weight of a single observation: ``u * p``."""
    return m.u * m.p


def expected_eps(m: UncertaintyModel, c: int) -> float:
    """Mean of the minimum over ``c`` independent draws: ``u * p**c``.

    The minimum equals ``u`` only when all ``c`` draws realize the extra
    weight, which happens with probability ``p**c``.
    """
    if c < 1:
        raise InvalidParams(f"c must be >= 1, got {c}")
    return m.u * m.p**c
