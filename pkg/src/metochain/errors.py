"""Exception hierarchy shared by all metochain modules."""


class MetochainError(Exception):
    """Base class for every error raised by this package."""


class FrozenError(MetochainError):
    """A mutating call was made on a frozen structure."""


# -- ontology --------------------------------------------------------------

class OntologyError(MetochainError):
    pass


class DuplicateTypeError(OntologyError):
    pass


class UnknownParentError(OntologyError):
    pass


class SecondRootError(OntologyError):
    pass


class UnknownTypeError(OntologyError, LookupError):
    pass


class IncomparableTypesError(OntologyError):
    pass


class HeadTypeMismatchError(OntologyError):
    pass


class DuplicateModelError(OntologyError):
    pass


# -- conceptual graphs -----------------------------------------------------

class GraphError(MetochainError):
    pass


class InvalidIndexError(GraphError, IndexError):
    pass


class IncomparableJunctionError(GraphError):
    pass


class NotASubtypeError(GraphError):
    pass


# -- lexicon ---------------------------------------------------------------

class LexiconError(MetochainError):
    pass


class DuplicateWordError(LexiconError):
    pass


class MissingHeadError(LexiconError):
    pass


class UnknownRelationTypeError(LexiconError, UnknownTypeError):
    pass


class DuplicateGramRelError(LexiconError):
    pass


class EmptyPreferencesError(LexiconError):
    pass


class UnknownWordError(LexiconError, LookupError):
    def __init__(self, word):
        super().__init__(f"unknown word {word!r}")
        self.word = word


class UnknownGramRelError(LexiconError, LookupError):
    def __init__(self, name):
        super().__init__(f"unknown grammatical relation {name!r}")
        self.name = name


# -- resolution ------------------------------------------------------------

class ResolutionError(MetochainError):
    pass


class NoChainFoundError(ResolutionError):
    """Every search stage was exhausted without a preference-satisfying chain."""

    def __init__(self, message, stages=(), explored=0, discarded=0, pairs_visited=0):
        super().__init__(message)
        self.stages = list(stages)
        self.explored = explored
        self.discarded = discarded
        self.pairs_visited = pairs_visited


class NotATreeError(ResolutionError):
    pass


# -- kb format -------------------------------------------------------------

class KBParseError(MetochainError):
    """Loading a KB failed; ``diagnostics`` holds every error found."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(first.format() if first else "invalid knowledge base")
