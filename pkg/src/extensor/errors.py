"""Exception types shared across the package."""


class ExtensorError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ExtensorError):
    """A caller-supplied value violates a documented precondition."""


class BoundExceededError(ExtensorError):
    """An exhaustive computation was refused because the instance is too large."""


class ParseError(ExtensorError):
    """Malformed structure text; carries the offending line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class InternalCheckError(ExtensorError):
    """A self-check that must hold by construction failed; indicates a bug."""
