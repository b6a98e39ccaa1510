"""Exception hierarchy.

Input problems derive from :class:`ValidationError` (which is also a
``ValueError``); resource limits raise :class:`BudgetExceeded`.
"""


class PathspaceError(Exception):
    pass


class ValidationError(PathspaceError, ValueError):
    pass


class BadShape(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


class NotInjective(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class DanglingEdge(ValidationError):
    pass


class BadHomTarget(ValidationError):
    pass


class BadBasepoint(ValidationError):
    pass


class InvalidWord(ValidationError):
    pass


class WordSyntaxError(InvalidWord):
    pass


class EndpointMismatch(ValidationError):
    pass


class SpecMismatch(ValidationError):
    pass


class NotAPinch(ValidationError):
    pass


class NotAnAmalgam(ValidationError):
    pass


class BadLetter(ValidationError):
    pass


class BrokenChain(ValidationError):
    pass


class BadStage(ValidationError):
    pass


class ModelError(ValidationError):
    """A concrete model violates a group or edge relation."""


class BudgetExceeded(PathspaceError):
    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} exceeds budget {cap}")
        self.size = size
        self.cap = cap


class InvariantViolation(PathspaceError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
