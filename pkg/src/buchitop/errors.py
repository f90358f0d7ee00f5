class BuchiTopError(Exception):
    pass


class ParseError(BuchiTopError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class AlphabetMismatch(BuchiTopError, ValueError):
    pass


class BudgetExceeded(BuchiTopError):
    """A construction passed its state budget; the answer is unknown, not false."""


class EmptyLanguage(BuchiTopError, ValueError):
    pass


class IllegalMove(BuchiTopError):
    pass


class InvariantViolation(BuchiTopError, AssertionError):
    """A property guaranteed by the underlying theory failed to hold."""
