"""Exception types shared across the package."""


class GsuError(Exception):
    """Base class for all library errors."""


class InvalidEdge(GsuError, ValueError):
    """An edge references a negative or out-of-range node id."""


class InvalidParams(GsuError, ValueError):
    """Parameters violate a documented precondition."""


class Disconnected(GsuError):
    """The operation requires reachability that the graph does not provide."""


class TooLarge(GsuError):
    """The requested object exceeds the configured size limits."""


class GenerationFailed(GsuError):
    """A randomized generator exhausted its retry budget."""


class NotFound(GsuError):
    """A parameter search exhausted its budget without a hit."""


class NotATree(GsuError):
    """The graph is not a tree (cycle present or disconnected)."""


class NoInteriorOptimum(GsuError):
    """The optimal realization probability does not lie inside (0, 1)."""


class AllCensored(GsuError):
    """Every trial in a batch hit the step cap; no statistics available."""
