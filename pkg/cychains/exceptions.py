"""Package-specific exceptions."""

from __future__ import annotations


class CychainsException(Exception):
    """Top-level package exception class."""


class InputError(ValueError, CychainsException):
    """There is an error with the input given to an operation or task."""


class InputParserError(InputError):
    """The input could not be parsed, it may be wrongly formatted.

    The zero-based character `position` of the offending token is kept when known.
    """

    def __init__(self, msg: str, position: int | None = None) -> None:
        self.position = position
        if position is not None:
            msg = f"{msg} (at position {position})"
        super().__init__(msg)


class DimensionMismatch(InputError):
    """Two operands live on tori of different dimension."""


class ArityMismatch(InputError):
    """An operator was combined with an input of the wrong arity or kind."""


class NormalizationError(InputError):
    """An operation requiring normalized input was given a non-normalized one."""


class VolumeMismatch(InputError):
    """Two objects carry different volume forms."""


class DivisionByUError(ArithmeticError, CychainsException):
    """A u-series with a nonzero u^0 coefficient was divided by u."""


class WindowTooSmall(CychainsException):
    """A finite window does not hold enough elements for a linear-algebra solve."""


class UnableToResolve(CychainsException):
    """Unable to resolve a suite or a named operation."""
