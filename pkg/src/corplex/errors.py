"""Exception types shared across the toolkit.

Plain domain errors (bad math inputs, empty streams) raise ValueError;
the classes here cover failures that carry extra payload.
"""


class CorplexError(Exception):
    """Base class for toolkit-specific failures."""


class MarkupError(CorplexError):
    """Raised when wiki markup cannot be parsed (e.g. runaway template nesting)."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset


class ParseError(CorplexError):
    """Raised on malformed dump records or tagged-text lines."""

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message if location is None else f"{message} [{location}]")
        self.location = location


class InsufficientPoolError(CorplexError):
    """Raised when a sampling pool runs out before the size target is reached."""

    def __init__(self, target: int, achieved: int, unit: str):
        super().__init__(
            f"pool exhausted at {achieved} {unit}s before reaching target {target}"
        )
        self.target = target
        self.achieved = achieved
        self.unit = unit
