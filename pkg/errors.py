# errors.py
class GbentError(Exception):
    """Root of every error raised by the toolkit."""


class TableFormatError(GbentError, ValueError):
    """Truth-table text or JSON that cannot be parsed."""


class LevelError(GbentError, ValueError):
    """Level k out of range or two operands on different levels."""


class ShapeError(GbentError, ValueError):
    """Tables that should share n (and k) do not."""


class PreconditionError(GbentError, ValueError):
    """An operation was called outside its domain."""


class InfeasibleSearch(GbentError):
    """Exhaustive span over the configured guard."""


class InvariantViolation(GbentError, RuntimeError):
    """Two encodings of the same fact disagree. Always a bug signal."""
