"""Conceptual graphs, linear chains, path enumeration and chain rendering.

A conceptual graph is bipartite: concept nodes carry a type and an optional
referent, relation nodes carry a relation type and connect exactly two
concepts (source -> target). Chains are linear graphs; each link records the
direction in which its relation arc was traversed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .errors import (
    GraphError,
    IncomparableJunctionError,
    IncomparableTypesError,
    InvalidIndexError,
    MissingHeadError,
    NotASubtypeError,
    UnknownRelationTypeError,
    UnknownTypeError,
)
from .ontology import TypeHierarchy

DEFAULT_MAX_REL = 6


@dataclass(frozen=True)
class ConceptNode:
    ctype: str
    referent: str | None = None

    def render(self) -> str:
        if self.referent is None:
            return f"[{self.ctype}]"
        return f"[{self.ctype}:{self.referent}]"


@dataclass(frozen=True)
class RelationNode:
    rtype: str
    source: int
    target: int


@dataclass(frozen=True)
class Link:
    """One traversed relation; ``forward`` is True when walked source -> target."""

    rtype: str
    forward: bool = True

    def render(self) -> str:
        if self.forward:
            return f"-({self.rtype})->"
        return f"<-({self.rtype})-"


@dataclass(frozen=True)
class Chain:
    concepts: tuple[ConceptNode, ...] = ()
    links: tuple[Link, ...] = ()

    def __post_init__(self):
        if self.concepts or self.links:
            if len(self.concepts) != len(self.links) + 1:
                raise GraphError(
                    f"chain with {len(self.links)} relations needs "
                    f"{len(self.links) + 1} concepts, got {len(self.concepts)}"
                )

    @classmethod
    def single(cls, concept: ConceptNode) -> "Chain":
        return cls((concept,), ())

    @property
    def length(self) -> int:
        return len(self.links)

    @property
    def is_empty(self) -> bool:
        return not self.links

    @property
    def first(self) -> ConceptNode:
        return self.concepts[0]

    @property
    def last(self) -> ConceptNode:
        return self.concepts[-1]

    @property
    def relations(self) -> tuple[str, ...]:
        return tuple(link.rtype for link in self.links)

    def with_ends(self, first: ConceptNode, last: ConceptNode) -> "Chain":
        """Copy with the end concepts replaced (the same node when length is 0)."""
        if not self.links:
            if first != last:
                raise GraphError("a chain without relations has a single end concept")
            return Chain((first,), ())
        return Chain((first,) + self.concepts[1:-1] + (last,), self.links)

    def __str__(self) -> str:
        return render_linear(self)


@dataclass(frozen=True)
class ConceptualGraph:
    concepts: tuple[ConceptNode, ...]
    relations: tuple[RelationNode, ...] = ()
    head: int | None = None
    # variable names used for coreference at load time; never rendered
    labels: tuple[str | None, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.concepts)
        for r in self.relations:
            if not (0 <= r.source < n and 0 <= r.target < n):
                raise InvalidIndexError(f"relation {r.rtype!r} references a missing concept")
            if r.source == r.target:
                raise GraphError(f"relation {r.rtype!r} is a self-loop on concept {r.source}")
        if self.head is not None and not 0 <= self.head < n:
            raise InvalidIndexError(f"head index {self.head} out of range")
        if self.labels:
            if len(self.labels) != n:
                raise GraphError("labels must parallel concepts")
            named = [v for v in self.labels if v is not None]
            if len(named) != len(set(named)):
                raise GraphError("two concepts carry the same variable")

    @property
    def head_concept(self) -> ConceptNode:
        if self.head is None:
            raise MissingHeadError("graph has no head concept")
        return self.concepts[self.head]

    @property
    def head_type(self) -> str:
        return self.head_concept.ctype

    def label(self, i: int) -> str | None:
        return self.labels[i] if self.labels else None

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Relation indices incident to each concept, in declaration order."""
        inc: list[list[int]] = [[] for _ in self.concepts]
        for k, r in enumerate(self.relations):
            inc[r.source].append(k)
            inc[r.target].append(k)
        return tuple(tuple(xs) for xs in inc)

    def reachable(self, start: int) -> set[int]:
        """Concepts connected to ``start``, ignoring arc direction."""
        seen = {start}
        todo = [start]
        while todo:
            i = todo.pop()
            for k in self.incidence[i]:
                r = self.relations[k]
                j = r.target if r.source == i else r.source
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return seen

    def validate(self, types: TypeHierarchy, reltypes: TypeHierarchy) -> None:
        for c in self.concepts:
            if c.ctype not in types:
                raise UnknownTypeError(f"unknown type {c.ctype!r}")
        for r in self.relations:
            if r.rtype not in reltypes:
                raise UnknownRelationTypeError(f"unknown relation type {r.rtype!r}")


class GraphBuilder:
    """Incremental construction of a ConceptualGraph with variable coreference."""

    def __init__(self):
        self._concepts: list[ConceptNode] = []
        self._labels: list[str | None] = []
        self._vars: dict[str, int] = {}
        self._relations: list[RelationNode] = []
        self.head: int | None = None

    def concept(self, ctype: str, var: str | None = None, referent: str | None = None,
                head: bool = False) -> int:
        if var is not None and var in self._vars:
            i = self._vars[var]
            old = self._concepts[i]
            if old.ctype != ctype or (referent is not None and referent != old.referent):
                raise GraphError(
                    f"variable {var!r} redeclared as {ctype!r} (was {old.ctype!r})"
                )
        else:
            i = len(self._concepts)
            self._concepts.append(ConceptNode(ctype, referent))
            self._labels.append(var)
            if var is not None:
                self._vars[var] = i
        if head:
            self.head = i
        return i

    def node(self, i: int) -> ConceptNode:
        return self._concepts[i]

    def replace(self, i: int, node: ConceptNode) -> None:
        self._concepts[i] = node

    def var(self, name: str) -> int:
        try:
            return self._vars[name]
        except KeyError:
            raise GraphError(f"undeclared variable {name!r}") from None

    def relation(self, rtype: str, source: int | str, target: int | str) -> int:
        s = self.var(source) if isinstance(source, str) else source
        t = self.var(target) if isinstance(target, str) else target
        if s == t:
            raise GraphError(f"relation {rtype!r} would be a self-loop")
        self._relations.append(RelationNode(rtype, s, t))
        return len(self._relations) - 1

    def build(self) -> ConceptualGraph:
        return ConceptualGraph(tuple(self._concepts), tuple(self._relations), self.head,
                               tuple(self._labels))


@dataclass(frozen=True)
class ReferenceModel:
    """Domain knowledge about one concept type, as a graph with a head of that type."""

    graph: ConceptualGraph

    def __post_init__(self):
        if self.graph.head is None:
            raise MissingHeadError("a reference model needs a head concept")

    @property
    def head(self) -> int:
        return self.graph.head

    @property
    def head_type(self) -> str:
        return self.graph.head_type

    def is_connected(self) -> bool:
        return len(self.graph.reachable(self.head)) == len(self.graph.concepts)


# -- paths -------------------------------------------------------------------

def _check_index(g: ConceptualGraph, i: int) -> None:
    if not isinstance(i, int) or not 0 <= i < len(g.concepts):
        raise InvalidIndexError(f"concept index {i!r} out of range")


def _dfs(g: ConceptualGraph, node: int, end: int, budget: int,
         nodes: list[int], links: list[Link]) -> Iterator[Chain]:
    if node == end:
        yield Chain(tuple(g.concepts[i] for i in nodes), tuple(links))
        return
    if budget == 0:
        return
    for k in g.incidence[node]:
        r = g.relations[k]
        forward = r.source == node
        nxt = r.target if forward else r.source
        if nxt in nodes:
            continue
        nodes.append(nxt)
        links.append(Link(r.rtype, forward))
        yield from _dfs(g, nxt, end, budget - 1, nodes, links)
        nodes.pop()
        links.pop()


def enumerate_paths(g: ConceptualGraph, start: int, end: int,
                    max_rel: int = DEFAULT_MAX_REL) -> list[Chain]:
    """All simple paths from ``start`` to ``end`` with at most ``max_rel`` relations.

    Arcs are traversed in either direction; each link keeps the direction it
    was walked in. Paths come out in lexicographic order of the relation
    indices they use.
    """
    _check_index(g, start)
    _check_index(g, end)
    if max_rel < 0:
        raise ValueError("max_rel must be >= 0")
    return list(_dfs(g, start, end, max_rel, [start], []))


# -- chain operations ------------------------------------------------------

def merge_concepts(a: ConceptNode, b: ConceptNode, types: TypeHierarchy) -> ConceptNode:
    """Fuse two concepts into one carrying the narrower type."""
    try:
        ctype = types.more_specific(a.ctype, b.ctype)
    except IncomparableTypesError:
        raise IncomparableJunctionError(
            f"cannot merge [{a.ctype}] with [{b.ctype}]: types are not comparable"
        ) from None
    if a.referent is not None and b.referent is not None and a.referent != b.referent:
        raise IncomparableJunctionError(
            f"cannot merge referents {a.referent!r} and {b.referent!r}"
        )
    return ConceptNode(ctype, a.referent if a.referent is not None else b.referent)


def join_chains(p1: Chain, p2: Chain, types: TypeHierarchy) -> Chain:
    """Join ``last(p1)`` to ``first(p2)``; the junction keeps the narrower type."""
    if not p1.concepts or not p2.concepts:
        raise GraphError("cannot join a chain without concepts")
    junction = merge_concepts(p1.last, p2.first, types)
    return Chain(p1.concepts[:-1] + (junction,) + p2.concepts[1:], p1.links + p2.links)


def restrict(c: ConceptNode, t: str, types: TypeHierarchy) -> ConceptNode:
    if not types.is_subtype(t, c.ctype):
        raise NotASubtypeError(f"{t!r} is not a subtype of {c.ctype!r}")
    return ConceptNode(t, c.referent)


# -- rendering -------------------------------------------------------------

def render_linear(chain: Chain) -> str:
    if not chain.concepts:
        return "[]"
    parts = [chain.concepts[0].render()]
    for link, c in zip(chain.links, chain.concepts[1:]):
        parts.append(link.render())
        parts.append(c.render())
    return "".join(parts)


def chain_graph(chain: Chain) -> ConceptualGraph:
    """The chain as a ConceptualGraph whose head is its first concept."""
    rels = []
    for i, link in enumerate(chain.links):
        s, t = (i, i + 1) if link.forward else (i + 1, i)
        rels.append(RelationNode(link.rtype, s, t))
    return ConceptualGraph(chain.concepts, tuple(rels), 0 if chain.concepts else None)


def render_graph(g: ConceptualGraph) -> str:
    """One line per concept: ``cN [Type] -(rel)-> cM ...`` in index order.

    The head concept, when present, is flagged with a leading ``*``.
    """
    out: dict[int, list[str]] = {i: [] for i in range(len(g.concepts))}
    for r in g.relations:
        out[r.source].append(f"-({r.rtype})-> c{r.target}")
    lines = []
    for i, c in enumerate(g.concepts):
        mark = "*" if i == g.head else ""
        line = f"{mark}c{i} {c.render()}"
        if out[i]:
            line += " " + " ".join(out[i])
        lines.append(line)
    return "\n".join(lines)


__all__ = [
    "DEFAULT_MAX_REL", "ConceptNode", "RelationNode", "Link", "Chain", "ConceptualGraph",
    "GraphBuilder", "ReferenceModel", "enumerate_paths", "merge_concepts", "join_chains",
    "restrict", "render_linear", "chain_graph", "render_graph",
]
