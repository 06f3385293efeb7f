"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LinearTwistError(Exception):
    """Base class for all package errors."""


class InvalidModulusError(LinearTwistError, ValueError):
    pass


class InvalidParityError(LinearTwistError, ValueError):
    pass


class RequiresPrimitiveError(LinearTwistError, ValueError):
    pass


class UnknownCharacterError(LinearTwistError, KeyError):
    pass


class PoleError(LinearTwistError, ArithmeticError):
    """Evaluation requested at (or too close to) a pole.

    ``location`` is the pole, ``residue`` its residue when known.
    """

    def __init__(self, message: str, location: complex, residue: complex | None = None):
        super().__init__(message)
        self.location = location
        self.residue = residue


class PrecisionError(LinearTwistError, ArithmeticError):
    """Requested accuracy could not be reached.

    Carries the best-effort ``value`` and its ``bound``.
    """

    def __init__(self, message: str, value: complex, bound: float):
        super().__init__(message)
        self.value = value
        self.bound = bound


class DomainError(LinearTwistError, ValueError):
    pass


class SymmetryViolationError(LinearTwistError, ValueError):
    """Coefficient pair violating the polynomial functional-equation symmetry."""

    def __init__(self, message: str, character: tuple[int, int] | None = None, divisor: int | None = None):
        super().__init__(message)
        self.character = character
        self.divisor = divisor


class EmptyFunctionError(LinearTwistError, ValueError):
    pass


class InvalidComponentError(LinearTwistError, ValueError):
    pass


class NoSupportError(LinearTwistError, ValueError):
    pass


class ContourError(LinearTwistError, ArithmeticError):
    pass


class SpecParseError(LinearTwistError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
