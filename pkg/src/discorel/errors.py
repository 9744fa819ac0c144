"""Exception hierarchy shared by all modules."""


class DiscorelError(Exception):
    """Base class for every error raised by this package."""


class CycleError(DiscorelError):
    """The order relation would identify two distinct basic types."""


class UnknownWordError(DiscorelError, KeyError):
    """A word of the utterance is not in the grammar's vocabulary."""

    def __str__(self):
        return Exception.__str__(self)


class ScaleError(DiscorelError):
    """An oracle was asked to run beyond its size guard."""


class TypeSyntaxError(DiscorelError, ValueError):
    """Malformed pregroup type or query text."""


class BoundaryMismatchError(DiscorelError):
    """Composition of wirings with incompatible boundaries."""


class MissingEntryError(DiscorelError, KeyError):
    """A dictionary entry has no wiring template in the lexicon."""

    def __str__(self):
        return Exception.__str__(self)


class ArityMismatchError(DiscorelError):
    """Tuple or bundle sizes disagree with the declared arity."""


class SignatureMismatchError(DiscorelError):
    """Two signatures assign different arities to the same symbol."""


class FreeArityMismatchError(DiscorelError):
    """Containment asked between queries with different free arity."""


class NonClosedSentenceError(DiscorelError):
    """A corpus sentence translated to a query with free variables."""


class UnknownEntityError(DiscorelError, KeyError):
    """An entity link refers to an entity outside the declared set."""

    def __str__(self):
        return Exception.__str__(self)


class LinkingError(DiscorelError):
    """An entity link refers to a sentence or variable that does not exist."""
