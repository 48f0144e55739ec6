"""Exception hierarchy.

Everything raised on purpose by this package derives from SelfSimError, so
callers (and the CLI) can catch one type and report the concrete class name.
"""


class SelfSimError(Exception):
    """Base class for all domain errors."""


# -- transducer construction and algebra --------------------------------

class MissingTransition(SelfSimError):
    pass


class DuplicateTransition(SelfSimError):
    pass


class BadSink(SelfSimError):
    pass


class NotInvertible(SelfSimError):
    pass


class AlphabetMismatch(SelfSimError):
    pass


class BadPower(SelfSimError):
    pass


class NoSink(SelfSimError):
    pass


class FormatError(SelfSimError):
    """Malformed textual description of an automaton, graph or action."""


# -- graphs and fixtures -------------------------------------------------

class BadGraph(SelfSimError):
    pass


class EmptyGraph(SelfSimError):
    pass


class UnknownFixture(SelfSimError):
    pass


# -- words and actions ---------------------------------------------------

class UnknownGenerator(SelfSimError):
    pass


class LevelTooLarge(SelfSimError):
    pass


class Disconnected(SelfSimError):
    pass


# -- word problem machinery ----------------------------------------------

class NotInStabilizer(SelfSimError):
    pass


class NotContractingWithinCaps(SelfSimError):
    pass


class QuotientTooLarge(SelfSimError):
    pass


class RaggedTuples(SelfSimError):
    pass


# -- trace monoids ---------------------------------------------------------

class NotATree(SelfSimError):
    pass


class PresentationMismatch(SelfSimError):
    pass


# -- coset constructions ---------------------------------------------------

class BadAction(SelfSimError):
    pass


class BadAssignment(SelfSimError):
    pass
