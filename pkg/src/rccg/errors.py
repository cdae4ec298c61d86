"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RccgError(Exception):
    """Base class for all library errors."""


class InvalidParameter(RccgError, ValueError):
    pass


class OrderTooLarge(RccgError, ValueError):
    pass


class IndexOutOfRange(RccgError, IndexError):
    pass


# group axioms


class NotAGroup(RccgError, ValueError):
    """Raised when a Cayley table violates a group axiom."""


class NotLatinSquare(NotAGroup):
    pass


class NotAssociative(NotAGroup):
    pass


class NoIdentity(NotAGroup):
    pass


class NoInverse(NotAGroup):
    pass


class FileParseError(RccgError, ValueError):
    pass


class UnknownFamily(RccgError, ValueError):
    pass


# graphs


class Disconnected(RccgError, ValueError):
    pass


class TrivialGraph(RccgError, ValueError):
    pass


class CliqueExplosion(RccgError, RuntimeError):
    pass


class EmptySubset(RccgError, ValueError):
    pass


# rainbow engine


class ColoringIncomplete(RccgError, ValueError):
    pass


class NotRainbowConnected(RccgError, ValueError):
    def __init__(self, message: str, failing_pairs=()):
        super().__init__(message)
        self.failing_pairs = list(failing_pairs)


class SearchBudgetExceeded(RccgError, RuntimeError):
    pass


class FingerprintMismatch(RccgError, ValueError):
    pass


# constructions


class ConstructionPreconditionError(RccgError, ValueError):
    """A construction was asked to run on a group outside its hypotheses."""


class CenterTooSmall(ConstructionPreconditionError):
    pass


class AbelianInput(ConstructionPreconditionError):
    pass


class CenterNotTrivial(ConstructionPreconditionError):
    pass


class TooManyPendants(ConstructionPreconditionError):
    pass


class TooFewPendants(ConstructionPreconditionError):
    pass


class TooManySubgroups(ConstructionPreconditionError):
    pass


class IntersectionMismatch(ConstructionPreconditionError):
    pass


class HTooSmall(ConstructionPreconditionError):
    pass


class OrderingNotFound(RccgError, RuntimeError):
    pass


# falsification events: a claimed structural fact failed on a concrete group


class Falsification(RccgError, AssertionError):
    pass


class CliqueCorrespondenceError(Falsification):
    """A maximal clique of the commuting graph is not an abelian subgroup."""


class ConstructionFalsified(Falsification):
    def __init__(self, message: str, failing_pairs=()):
        super().__init__(message)
        self.failing_pairs = list(failing_pairs)


class Mismatch(Falsification):
    def __init__(self, message: str, classifier=None, solver=None):
        super().__init__(message)
        self.classifier = classifier
        self.solver = solver
