"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live in different numbers of variables (or have bad shapes)."""


class PreconditionError(ValueError):
    """An input violates an order, degree or normalization requirement."""


class TruncationError(ValueError):
    """A requested coefficient lies beyond what the truncation degree supports."""
