"""Exception hierarchy.

Every domain error raised by the library derives from :class:`DomainError`,
so callers (the CLI in particular) can catch one class and report the
concrete error name.
"""


class DomainError(ValueError):
    """Base class for invalid inputs to a combinatorial map or constructor."""


# series
class NonUnitConstantTerm(DomainError):
    pass


class NegativeExponent(DomainError):
    pass


class DivergentInfiniteProduct(DomainError):
    pass


class IncompatibleTruncation(DomainError):
    pass


# permutations
class NotBijective(DomainError):
    pass


class WrongSum(DomainError):
    pass


class SizeMismatch(DomainError):
    pass


# diagrams
class NotAlternating(DomainError):
    pass


class ExcludedUniformR(DomainError):
    pass


class ExcludedUniformL(DomainError):
    pass


class ChainTypeDomainMismatch(DomainError):
    pass


class NotFullyCommutative(DomainError):
    pass


# heaps
class InfiniteEnumeration(DomainError):
    pass


class InvalidWalk(DomainError):
    pass


class ConditionViolated(DomainError):
    pass


# monodimer
class ExceptionalWalk(DomainError):
    pass


class NoActiveSite(DomainError):
    pass


class ForbiddenFactor(DomainError):
    pass


# ppp
class InvalidSequence(DomainError):
    pass


class RectangularPpp(DomainError):
    pass


class TrivialHeap(DomainError):
    pass


class WrongType(DomainError):
    pass
