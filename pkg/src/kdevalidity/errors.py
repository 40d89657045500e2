"""Exception hierarchy shared by every module of the package."""


class ValidityError(Exception):
    """Base class; the CLI maps subclasses to distinct exit codes."""

    exit_code = 1


class InsufficientSample(ValidityError, ValueError):
    exit_code = 3


class InvalidBandwidth(ValidityError, ValueError):
    exit_code = 3


class DimensionMismatch(ValidityError, ValueError):
    exit_code = 4


class NoComparableVariables(ValidityError, ValueError):
    exit_code = 4


class InvalidK(ValidityError, ValueError):
    exit_code = 5


class UndefinedIndex(ValidityError, ArithmeticError):
    exit_code = 6


class ParseError(ValidityError, ValueError):
    exit_code = 7


class SchemaError(ValidityError, ValueError):
    exit_code = 8


class InputMismatch(ValidityError, ValueError):
    exit_code = 9
