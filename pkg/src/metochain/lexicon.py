"""Two-tier semantic lexicon: predicate definitions and grammatical relations."""
from __future__ import annotations

from dataclasses import dataclass

from .cg import ConceptualGraph
from .errors import (
    DuplicateGramRelError,
    DuplicateWordError,
    EmptyPreferencesError,
    FrozenError,
    MissingHeadError,
    UnknownGramRelError,
    UnknownRelationTypeError,
    UnknownWordError,
)
from .ontology import TypeHierarchy


@dataclass(frozen=True)
class PredicateEntry:
    word: str
    definition: ConceptualGraph

    @property
    def head_type(self) -> str:
        return self.definition.head_type


@dataclass(frozen=True)
class GramRelEntry:
    """A grammatical relation; ``prefs[0]`` is the highest-priority relation type."""

    name: str
    prefs: tuple[str, ...]


class Lexicon:
    def __init__(self, types: TypeHierarchy, reltypes: TypeHierarchy):
        self.types = types
        self.reltypes = reltypes
        self._entries: dict[str, PredicateEntry] = {}
        self._gramrels: dict[str, GramRelEntry] = {}
        self._frozen = False

    def freeze(self) -> "Lexicon":
        self._frozen = True
        return self

    def add_entry(self, word: str, g: ConceptualGraph) -> None:
        if self._frozen:
            raise FrozenError("lexicon is frozen")
        if g.head is None:
            raise MissingHeadError(f"definition of {word!r} has no head concept")
        if word in self._entries:
            raise DuplicateWordError(f"word {word!r} already defined")
        g.validate(self.types, self.reltypes)
        self._entries[word] = PredicateEntry(word, g)

    def add_gramrel(self, name: str, prefs) -> None:
        if self._frozen:
            raise FrozenError("lexicon is frozen")
        prefs = tuple(prefs)
        if not prefs:
            raise EmptyPreferencesError(f"grammatical relation {name!r} has no preferences")
        for p in prefs:
            if p not in self.reltypes:
                raise UnknownRelationTypeError(f"unknown relation type {p!r}")
        if len(set(prefs)) != len(prefs):
            raise DuplicateGramRelError(f"grammatical relation {name!r} repeats a preference")
        if name in self._gramrels:
            raise DuplicateGramRelError(f"grammatical relation {name!r} already defined")
        self._gramrels[name] = GramRelEntry(name, prefs)

    def lookup_entry(self, word: str) -> PredicateEntry:
        try:
            return self._entries[word]
        except KeyError:
            raise UnknownWordError(word) from None

    def lookup_gramrel(self, name: str) -> GramRelEntry:
        try:
            return self._gramrels[name]
        except KeyError:
            raise UnknownGramRelError(name) from None

    @property
    def entries(self) -> dict[str, PredicateEntry]:
        return dict(self._entries)

    @property
    def gramrels(self) -> dict[str, GramRelEntry]:
        return dict(self._gramrels)
