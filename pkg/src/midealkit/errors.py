"""Exception hierarchy shared by every module."""


class MidealError(Exception):
    """Base class for all midealkit errors."""


class DomainError(MidealError, ValueError):
    """An argument lies outside the domain of an operation."""


class SizeCapError(MidealError):
    """A ring or lattice would exceed the configured size cap."""


class RingAxiomError(MidealError, ValueError):
    """Operation tables do not define a ring.

    ``witness`` holds the first failing element indices.
    """

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class AdditionAxiomError(RingAxiomError):
    pass


class AssociativityError(RingAxiomError):
    pass


class DistributivityError(RingAxiomError):
    pass


class UnitError(RingAxiomError):
    pass


class InvalidIdealError(MidealError, ValueError):
    pass


class UnsupportedOperationError(MidealError):
    pass


class PreconditionError(MidealError, ValueError):
    """The hypothesis of a theorem-backed operation does not hold."""


class TheoremViolation(MidealError, AssertionError):
    """An object guaranteed to exist by a theorem failed its verification."""


class InvariantError(MidealError, AssertionError):
    pass


class SpecParseError(MidealError, ValueError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
