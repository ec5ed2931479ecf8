"""Exception types shared across the package."""


class HadminorsError(Exception):
    """Base class for errors raised by this package."""


class ParseError(HadminorsError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class CapacityError(HadminorsError):
    """Input exceeds an order, table, or memory limit."""


class RoundingHazardError(HadminorsError, ArithmeticError):
    """A floating-point determinant was not close enough to an integer."""
