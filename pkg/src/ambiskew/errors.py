"""Exception types shared across the package."""


class AmbiskewError(Exception):
    """Base class for all package errors."""


class DivisionByZero(AmbiskewError):
    """Division (or negative power) with a zero denominator/base."""


class KindMismatch(AmbiskewError):
    """Operands belong to different base rings or presentations."""


class UnknownSymbol(AmbiskewError):
    """A word or expression refers to a generator that does not exist."""


class NegativePowerNotInvertible(AmbiskewError):
    """Negative exponent on a generator that is not invertible."""


class NonDiagonalSigma(AmbiskewError):
    """Operation requires a diagonal base automorphism."""


class USourceUnsolvable(AmbiskewError):
    """No element u satisfies u - rho*sigma(u) = v for the given v."""


class DegreeMismatch(AmbiskewError):
    """A differential form has the wrong degree for the operation."""


class UnknownEntry(AmbiskewError):
    """Catalog lookup for a name that is not registered."""


class PreconditionViolated(AmbiskewError):
    """Catalog entry parameters violate the entry's preconditions."""


class SpecSyntaxError(AmbiskewError):
    """Syntax error in a spec file or expression, with position info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ValidationError(AmbiskewError):
    """A structurally valid spec file violates a semantic invariant."""
