"""Exception types shared across the package.

Every error raised on purpose derives from :class:`OrchardError`, which is a
``ValueError`` so callers that only care about "bad input" can catch that.
"""


class OrchardError(ValueError):
    pass


class NotPrime(OrchardError):
    pass


class Reducible(OrchardError):
    pass


class TooLarge(OrchardError):
    """A desk-scale cap was exceeded."""


class SpecMismatch(OrchardError):
    pass


class ZeroInverse(OrchardError, ZeroDivisionError):
    pass


class EvenCharacteristic(OrchardError):
    pass


class SingularCurve(OrchardError):
    pass


class NotOnCurve(OrchardError):
    pass


class WrongForm(OrchardError):
    pass


class NonInteger(OrchardError):
    pass


class TooSmall(OrchardError):
    pass


class RankTooHigh(OrchardError):
    pass


class DuplicatePoints(OrchardError):
    pass


class NotRealizableOrder(OrchardError):
    pass


class BadFactorization(OrchardError):
    pass


class CongruenceViolated(OrchardError):
    pass


class NoParameterFound(OrchardError):
    pass


class HypothesisViolated(OrchardError):
    pass


class FourCollinear(OrchardError):
    pass


class DenominatorDivisibleByP(OrchardError):
    pass


class RowMismatch(OrchardError):
    def __init__(self, row, expected, computed):
        self.row = row
        self.expected = expected
        self.computed = computed
        super().__init__(f"{row}: expected {expected}, computed {computed}")


class InternalCheckFailed(AssertionError):
    """A mathematical invariant that must always hold was violated."""
