"""Exception types shared across the package."""


class UsageError(ValueError):
    """An operation was called outside its contract (bad arguments, limits)."""


class ParseError(ValueError):
    """Malformed input text.  ``lineno`` is 1-based."""

    def __init__(self, message, lineno):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class HardViolation(Exception):
    """An assignment falsifies a hard constraint."""

    def __init__(self, index, constraint):
        super().__init__(f"hard constraint #{index} violated: {constraint}")
        self.index = index
        self.constraint = constraint


class EncodingBudgetError(Exception):
    """A CNF encoding would exceed the configured clause budget."""


class ResourceOut(Exception):
    """The conflict budget or the wall-clock deadline was exhausted."""
