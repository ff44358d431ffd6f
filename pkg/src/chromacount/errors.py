"""Shared exception types.

ValueError is used for plain parameter-domain mistakes; the classes here mark
failures that callers may want to catch specifically (resource guards and
internal consistency checks).
"""


class GuardError(RuntimeError):
    """A configured resource guard (state space, copy budget) was exceeded."""


class StateSpaceError(GuardError):
    """Exhaustive coloring enumeration would be too large."""


class CopyBudgetError(GuardError):
    """Materializing the copy list would exceed the configured cap."""


class CountingInternalError(RuntimeError):
    """An internal counting identity failed; indicates a bug, not bad input."""


class EdgeListError(ValueError):
    """Malformed edge-list text."""
