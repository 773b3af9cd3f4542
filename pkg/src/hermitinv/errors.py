"""Exception hierarchy for hermitinv."""
from __future__ import annotations


class HermitianError(ValueError):
    """Base class for every error raised by the library."""


class NonPrimeP(HermitianError):
    pass


class DegreeTooLarge(HermitianError):
    pass


class NoIrreducibleFound(HermitianError):
    """Internal error: a monic irreducible of every degree exists."""


class DivisionByZero(HermitianError, ZeroDivisionError):
    pass


class FieldMismatch(HermitianError):
    pass


class FieldTooSmall(HermitianError):
    pass


class BadSubfieldDegree(HermitianError):
    pass


class ZeroPolynomial(HermitianError):
    pass


class DegreeZeroInVar(HermitianError):
    pass


class ZeroDenominator(HermitianError):
    pass


class ScaleExceeded(HermitianError):
    pass


class BadParameters(HermitianError):
    pass


class ZeroLambda(HermitianError):
    pass


class SingularMatrix(HermitianError):
    pass


class EntriesNotInFq2(HermitianError):
    pass


class NotOnCurve(HermitianError):
    pass


class DegenerateEliminant(HermitianError):
    pass


class NotDivisible(HermitianError):
    """Raised when an exact multivariate division leaves a remainder."""
