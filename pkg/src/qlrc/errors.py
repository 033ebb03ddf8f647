"""Exception hierarchy shared by every module."""
from __future__ import annotations


class QLRCError(Exception):
    """Base class for all library errors."""


class InvalidInput(QLRCError, ValueError):
    """Input violates a documented precondition."""


# galois
class NotPrime(InvalidInput):
    pass


class HermitianNeedsEvenS(InvalidInput):
    pass


class DoesNotDivideGroupOrder(InvalidInput):
    pass


class NotASubfield(InvalidInput):
    pass


class FieldTooLarge(InvalidInput):
    pass


class DivisionByZero(QLRCError, ZeroDivisionError):
    pass


class TowerMismatch(InvalidInput):
    pass


# cosets
class BaseNotCoprime(InvalidInput):
    pass


class ModulusMismatch(InvalidInput):
    pass


class NotADivisor(InvalidInput):
    pass


class IndexOutOfRange(InvalidInput, IndexError):
    pass


class NotComplete(InvalidInput):
    pass


# matrix / evaluation
class DimensionMismatch(InvalidInput):
    pass


class DivisibilityViolation(InvalidInput):
    pass


class ExponentOutOfRange(InvalidInput):
    pass


# codes
class FieldNotSquare(InvalidInput):
    pass


class EmptyIndexSet(InvalidInput):
    pass


class ZeroCode(InvalidInput):
    pass


class Infeasible(QLRCError):
    """A computation exceeds its feasibility guard."""


# locality / quantum
class NotLocallyRecoverable(QLRCError):
    def __init__(self, message: str, coordinate: int | None = None):
        super().__init__(message)
        self.coordinate = coordinate


class SearchInfeasible(Infeasible):
    pass


class NotSelfOrthogonal(InvalidInput):
    pass


class NotDualContaining(InvalidInput):
    pass


# families
class SpecInvalid(InvalidInput):
    pass


class OddQ(SpecInvalid):
    pass


class URange(SpecInvalid):
    pass


class VRange(SpecInvalid):
    pass


class AxisTooLarge(SpecInvalid):
    pass


class AxisNotInSubfield(SpecInvalid):
    pass


class VerificationMismatch(QLRCError):
    """An exact computation disagrees with a predicted parameter."""

    def __init__(self, message: str, mismatches=None, instance=None):
        super().__init__(message)
        self.mismatches = list(mismatches or [])
        self.instance = instance
