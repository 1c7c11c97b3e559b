"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter lies outside the range an operation accepts."""


class HypothesisError(ValueError):
    """A structural precondition (quadratic form, path graph, ...) fails."""


class BudgetError(RuntimeError):
    """An exhaustive computation would exceed its size budget."""
