"""Exception hierarchy shared by every module in the package."""


class MinModError(Exception):
    """Base class for all package errors."""


class InvalidInput(MinModError, ValueError):
    pass


class NotHermitian(MinModError, ValueError):
    pass


class NotPositive(MinModError, ValueError):
    pass


class Singular(MinModError, ValueError):
    pass


class EmptySubspace(MinModError, ValueError):
    pass


class DimensionMismatch(MinModError, ValueError):
    pass


class ContractionRequired(MinModError, ValueError):
    pass


class DuplicateValue(MinModError, ValueError):
    pass


class NonMonotoneTail(MinModError, ValueError):
    pass


class NegativeValueInPositiveMode(MinModError, ValueError):
    pass


class NotBoundedlyInvertible(MinModError, ValueError):
    pass


class PositivityRequired(MinModError, ValueError):
    pass


class UnvalidatedSpec(MinModError, ValueError):
    pass


class StaleCertificate(MinModError, ValueError):
    pass


class NotReducing(MinModError, ValueError):
    pass


class NonPositiveWeight(MinModError, ValueError):
    pass


class DegenerateBoundary(MinModError, ValueError):
    pass


class KTooLarge(MinModError, ValueError):
    pass
