"""Exception types shared across the package."""

from __future__ import annotations


class QCError(Exception):
    """Base class for all package errors."""


class UnsupportedRing(QCError):
    """The operation needs a Euclidean univariate ring (or a field)."""


class WindowRequired(QCError):
    """An infinite-dimensional space was requested without a degree window."""


class SquareNotCommutative(QCError):
    """A lifting problem was posed with a non-commuting square."""


class BudgetExceeded(QCError):
    """The small object argument did not stabilize within its step budget."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class FactorizationBudgetExceeded(BudgetExceeded):
    """A factorization needed more small-object steps than allowed."""


class GeneratorMissing(QCError):
    """The filtered class does not contain a generator."""


class PairNotHereditary(QCError):
    """A construction needed Ext^2 vanishing that does not hold."""


class FactorNotInLeftClass(QCError):
    """A filtration factor is not left-orthogonal to the given class."""


class UniverseTooLarge(QCError):
    """A finite universe exceeds the verification cap."""


class CoverInvalid(QCError):
    """The chosen elements do not cover the semilattice by joins."""


class InvalidObject(QCError):
    """A module, morphism or complex violates its structural invariants."""


class ParseError(QCError):
    """Base class for input-language diagnostics."""

    kind = "Error"

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.path = path
        where = ""
        if path is not None or line is not None:
            where = f"{path or '<input>'}:{line if line is not None else '?'}: "
        super().__init__(f"{where}{self.kind}: {message}")


class InputSyntaxError(ParseError):
    kind = "SyntaxError"


class InputReferenceError(ParseError):
    kind = "ReferenceError"


class InputValidationError(ParseError):
    kind = "ValidationError"
