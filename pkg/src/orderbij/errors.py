"""Exception hierarchy shared by every module."""

from __future__ import annotations


class OrderBijError(Exception):
    """Base class for all errors raised by this package."""


class GroupError(OrderBijError):
    pass


class CapExceeded(GroupError):
    """A closure, lattice or enumeration outgrew its configured bound."""


class InvalidPermutation(GroupError):
    pass


class AxiomError(GroupError):
    """A Cayley table violates a group axiom; ``witness`` names the failure."""

    axiom = "group-axiom"

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


class NotAssociative(AxiomError):
    axiom = "associativity"


class NoIdentity(AxiomError):
    axiom = "identity"


class NoInverse(AxiomError):
    axiom = "inverse"


class NotNormal(GroupError):
    pass


class AntichainExplosion(OrderBijError):
    pass


class NoChain(OrderBijError):
    def __init__(self, message: str, divisor: int | None = None, truncated: bool = False):
        super().__init__(message)
        self.divisor = divisor
        self.truncated = truncated


class SizeMismatch(OrderBijError):
    pass


class OrderMismatch(OrderBijError):
    pass


class NotQElement(OrderBijError):
    pass


class HypothesisViolated(OrderBijError):
    pass


class ConstructionFailed(OrderBijError):
    """A case of the lifting construction did not produce a valid pair."""

    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}


class WeightMissing(OrderBijError):
    pass


class MonotonicityError(OrderBijError):
    pass


class NotAGroupBijection(OrderBijError):
    pass


class TopologyTooLarge(OrderBijError):
    pass


class UnknownGroup(OrderBijError):
    pass


class ParseError(OrderBijError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
        self.path = path
        self.line = line


class PersistenceFailure(OrderBijError):
    pass
