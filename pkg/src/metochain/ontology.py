"""Type trees and the registry of reference models attached to concept types.

Both the concept-type hierarchy and the relation-type hierarchy are plain
rooted trees: every type except the root has exactly one parent. Subsumption
``a <= b`` holds when ``b`` lies on the parent walk starting at ``a``.

Structures are built in a single-threaded load phase and then frozen; after
``freeze()`` every query is read-only.
"""
from __future__ import annotations

from typing import Iterator

from .errors import (
    DuplicateModelError,
    DuplicateTypeError,
    FrozenError,
    HeadTypeMismatchError,
    IncomparableTypesError,
    SecondRootError,
    UnknownParentError,
    UnknownTypeError,
)


class TypeHierarchy:
    """A rooted tree of type names with subsumption queries."""

    def __init__(self, kind: str = "type"):
        self.kind = kind
        self.root: str | None = None
        self._parent: dict[str, str | None] = {}
        self._depth: dict[str, int] = {}
        self._frozen = False
        self._ancestor_sets: dict[str, frozenset[str]] | None = None

    # -- construction ---------------------------------------------------

    def add_type(self, name: str, parent: str | None = None) -> None:
        if self._frozen:
            raise FrozenError(f"{self.kind} hierarchy is frozen")
        if name in self._parent:
            raise DuplicateTypeError(f"{self.kind} {name!r} already declared")
        if parent is None:
            if self.root is not None:
                raise SecondRootError(
                    f"{self.kind} {name!r} would be a second root (root is {self.root!r})"
                )
            self.root = name
            self._parent[name] = None
            self._depth[name] = 0
            return
        if parent not in self._parent:
            raise UnknownParentError(f"unknown parent {self.kind} {parent!r} for {name!r}")
        self._parent[name] = parent
        self._depth[name] = self._depth[parent] + 1

    def freeze(self) -> "TypeHierarchy":
        self._frozen = True
        self._ancestor_sets = {t: frozenset(self.ancestors(t)) for t in self._parent}
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- queries --------------------------------------------------------

    def __contains__(self, name: object) -> bool:
        return name in self._parent

    def __iter__(self) -> Iterator[str]:
        return iter(self._parent)

    def __len__(self) -> int:
        return len(self._parent)

    def _check(self, name: str) -> None:
        if name not in self._parent:
            raise UnknownTypeError(f"unknown {self.kind} {name!r}")

    def parent(self, name: str) -> str | None:
        self._check(name)
        return self._parent[name]

    def depth(self, name: str) -> int:
        self._check(name)
        return self._depth[name]

    def ancestors(self, name: str) -> Iterator[str]:
        """Yield ``name`` and then each ancestor up to the root."""
        self._check(name)
        t: str | None = name
        while t is not None:
            yield t
            t = self._parent[t]

    def children(self, name: str) -> list[str]:
        self._check(name)
        return [t for t, p in self._parent.items() if p == name]

    def is_subtype(self, a: str, b: str) -> bool:
        """``a <= b``: reflexive, walks parent links from ``a``."""
        self._check(a)
        self._check(b)
        if self._ancestor_sets is not None:
            return b in self._ancestor_sets[a]
        # b can only be an ancestor if it is no deeper than a
        if self._depth[b] > self._depth[a]:
            return False
        return any(t == b for t in self.ancestors(a))

    def comparable(self, a: str, b: str) -> bool:
        return self.is_subtype(a, b) or self.is_subtype(b, a)

    def more_specific(self, a: str, b: str) -> str:
        if self.is_subtype(a, b):
            return a
        if self.is_subtype(b, a):
            return b
        raise IncomparableTypesError(f"{self.kind}s {a!r} and {b!r} are not comparable")

    def items(self) -> Iterator[tuple[str, str | None]]:
        """(type, parent) pairs in declaration order."""
        return iter(self._parent.items())


class ModelRegistry:
    """Reference models keyed by the concept type they describe."""

    def __init__(self, hierarchy: TypeHierarchy):
        self.hierarchy = hierarchy
        self._models: dict = {}
        self._frozen = False

    def register_model(self, t: str, model) -> None:
        if self._frozen:
            raise FrozenError("model registry is frozen")
        if t not in self.hierarchy:
            raise UnknownTypeError(f"unknown type {t!r}")
        if model.head_type != t:
            raise HeadTypeMismatchError(
                f"model for {t!r} has head of type {model.head_type!r}"
            )
        if t in self._models:
            raise DuplicateModelError(f"type {t!r} already has a reference model")
        self._models[t] = model

    def freeze(self) -> "ModelRegistry":
        self._frozen = True
        return self

    def get(self, t: str):
        return self._models.get(t)

    def __contains__(self, t: object) -> bool:
        return t in self._models

    def __len__(self) -> int:
        return len(self._models)

    def __iter__(self):
        return iter(self._models)

    def items(self):
        return self._models.items()

    def inherited_models(self, t: str) -> list:
        """Own model of ``t`` first, then those of its ancestors nearest-first."""
        return [self._models[a] for a in self.hierarchy.ancestors(t) if a in self._models]
