"""Link resolution: find a conceptual chain for a (predicate, gramrel, predicate) triple.

Search order
------------
1. Fusion of the two head types, outside any model pair.
2. Model pairs from the product of both predicates' model sequences, most
   specific pair first (ordered by ``(max rank, min rank)``). Within a pair,
   inclusion (both orientations) is tried before join.

The first stage that yields at least one chain satisfying the grammatical
relation's preferences closes the search. Its candidates are ranked by
preference rank, then chain length; remaining ties go to the lexicographically
smallest rendering, or to a seeded random pick.

Every chain runs from the first predicate's head concept to the second's.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cg import (
    DEFAULT_MAX_REL,
    Chain,
    ConceptNode,
    ConceptualGraph,
    GraphBuilder,
    enumerate_paths,
    join_chains,
    merge_concepts,
    render_linear,
    restrict,
)
from .errors import IncomparableJunctionError, NoChainFoundError, NotATreeError
from .lexicon import GramRelEntry, PredicateEntry
from .ontology import ModelRegistry, TypeHierarchy

FUSION = "fusion"
INCLUSION = "inclusion"
JOIN = "join"
METHODS = (FUSION, INCLUSION, JOIN)


@dataclass(frozen=True)
class RankedModel:
    """A model for a predicate at a given generality rank.

    Rank 0 is the predicate's own lexicon definition (``label`` is the word);
    rank k >= 1 is the k-th reference model inherited along the type tree
    (``label`` is the model's type).
    """

    label: str
    graph: ConceptualGraph
    rank: int


def specificity_key(r1: int, r2: int) -> tuple[int, int]:
    return (max(r1, r2), min(r1, r2))


@dataclass(frozen=True)
class ModelPair:
    m1: RankedModel
    m2: RankedModel

    @property
    def ranks(self) -> tuple[int, int]:
        return (self.m1.rank, self.m2.rank)

    @property
    def key(self) -> tuple[int, int]:
        return specificity_key(*self.ranks)

    @property
    def labels(self) -> tuple[str, str]:
        return (self.m1.label, self.m2.label)


def _ranks(p) -> tuple[int, int]:
    return p.ranks if isinstance(p, ModelPair) else tuple(p)


def pair_more_specific(a, b) -> bool:
    """True when pair ``a`` is strictly more specific than ``b``.

    Accepts ModelPair objects or bare ``(rank1, rank2)`` tuples.
    """
    return specificity_key(*_ranks(a)) < specificity_key(*_ranks(b))


@dataclass(frozen=True)
class Candidate:
    chain: Chain
    method: str
    pair: ModelPair | None
    pref_rank: int

    @property
    def length(self) -> int:
        return self.chain.length

    @property
    def rendered(self) -> str:
        return render_linear(self.chain)

    def sort_key(self):
        return (self.pref_rank, self.length, self.rendered)


@dataclass(frozen=True)
class StageReport:
    """What one visited search stage produced."""

    method: str
    ranks: tuple[int, int] | None
    models: tuple[str, str] | None
    generated: int
    satisfying: int

    def describe(self) -> str:
        where = "" if self.ranks is None else \
            f" pair=({self.ranks[0]},{self.ranks[1]}) models={self.models[0]}+{self.models[1]}"
        outcome = "failed" if self.satisfying == 0 else "succeeded"
        return (f"stage {self.method}{where}: generated={self.generated} "
                f"satisfying={self.satisfying} {outcome}")


@dataclass(frozen=True)
class ResolutionResult:
    selected: Candidate
    explored: int
    discarded: int
    pairs_visited: int
    stages: tuple[StageReport, ...] = ()
    # every preference-satisfying candidate of the winning stage, ranked
    candidates: tuple[Candidate, ...] = field(default=(), repr=False)

    @property
    def chain(self) -> Chain:
        return self.selected.chain

    @property
    def method(self) -> str:
        return self.selected.method

    def as_record(self) -> dict:
        pair = self.selected.pair
        return {
            "chain": self.selected.rendered,
            "method": self.method,
            "models": list(pair.labels) if pair else [],
            "ranks": list(pair.ranks) if pair else [],
            "pref_rank": self.selected.pref_rank,
            "length": self.selected.length,
            "explored": self.explored,
            "discarded": self.discarded,
            "pairs": self.pairs_visited,
            "stages": [
                {
                    "method": s.method,
                    "ranks": list(s.ranks) if s.ranks else None,
                    "models": list(s.models) if s.models else None,
                    "generated": s.generated,
                    "satisfying": s.satisfying,
                }
                for s in self.stages
            ],
        }


# -- model identification --------------------------------------------------

def model_sequence(entry: PredicateEntry, registry: ModelRegistry) -> list[RankedModel]:
    """Definition first, then reference models inherited from the head type upward."""
    seq = [RankedModel(entry.word, entry.definition, 0)]
    for k, m in enumerate(registry.inherited_models(entry.head_type), start=1):
        seq.append(RankedModel(m.head_type, m.graph, k))
    return seq


def model_pairs(seq1: Sequence[RankedModel], seq2: Sequence[RankedModel]) -> list[ModelPair]:
    pairs = [ModelPair(a, b) for a, b in itertools.product(seq1, seq2)]
    # equally specific pairs are visited in order of the first predicate's rank
    pairs.sort(key=lambda p: (p.key, p.ranks))
    return pairs


# -- chain production ------------------------------------------------------

def method_fusion(t1: str, t2: str, types: TypeHierarchy) -> Chain | None:
    if not types.comparable(t1, t2):
        return None
    return Chain.single(ConceptNode(types.more_specific(t1, t2)))


def method_inclusion(m: ConceptualGraph, head_side: str, other_type: str,
                     types: TypeHierarchy, max_rel: int = DEFAULT_MAX_REL) -> list[Chain]:
    """Paths between the head of ``m`` and each concept subsuming ``other_type``.

    ``head_side="left"``: the model belongs to the first predicate, chains run
    head -> C'. ``"right"``: the model belongs to the second predicate, chains
    run C' -> head. The far endpoint is narrowed to ``other_type``.
    """
    if head_side not in ("left", "right"):
        raise ValueError(f"head_side must be 'left' or 'right', not {head_side!r}")
    head = m.head
    out = []
    for i, c in enumerate(m.concepts):
        if not types.is_subtype(other_type, c.ctype):
            continue
        if head_side == "left":
            for p in enumerate_paths(m, head, i, max_rel):
                far = restrict(p.last, other_type, types)
                out.append(p.with_ends(far if p.is_empty else p.first, far))
        else:
            for p in enumerate_paths(m, i, head, max_rel):
                far = restrict(p.first, other_type, types)
                out.append(p.with_ends(far, far if p.is_empty else p.last))
    return out


def method_join(m1: ConceptualGraph, m2: ConceptualGraph, types: TypeHierarchy,
                max_rel: int = DEFAULT_MAX_REL) -> list[Chain]:
    """Join a path head1 -> C'1 in ``m1`` with a path C'2 -> head2 in ``m2``.

    Every pair of concepts with comparable types is a junction candidate; the
    joined chain carries at most ``max_rel`` relations in total.
    """
    out = []
    paths1: dict[int, list[Chain]] = {}
    paths2: dict[int, list[Chain]] = {}
    for i, c1 in enumerate(m1.concepts):
        for j, c2 in enumerate(m2.concepts):
            if not types.comparable(c1.ctype, c2.ctype):
                continue
            if i not in paths1:
                paths1[i] = enumerate_paths(m1, m1.head, i, max_rel)
            if j not in paths2:
                paths2[j] = enumerate_paths(m2, j, m2.head, max_rel)
            for p1 in paths1[i]:
                budget = max_rel - p1.length
                for p2 in paths2[j]:
                    if p2.length > budget:
                        continue
                    try:
                        out.append(join_chains(p1, p2, types))
                    except IncomparableJunctionError:
                        # clashing individual referents
                        continue
    return out


# -- preferences -----------------------------------------------------------

def pref_rank(chain: Chain, gr: GramRelEntry, reltypes: TypeHierarchy) -> int | None:
    """Index of the highest-priority preference some chain relation falls under.

    A chain without relations only satisfies a catch-all preference: it gets
    the last index when the last preference is the relation-type root.
    """
    if chain.is_empty:
        if gr.prefs[-1] == reltypes.root:
            return len(gr.prefs) - 1
        return None
    rels = set(chain.relations)
    for i, pref in enumerate(gr.prefs):
        if any(reltypes.is_subtype(r, pref) for r in rels):
            return i
    return None


# -- search ----------------------------------------------------------------

def _anchor(chain: Chain, t1: str, t2: str, types: TypeHierarchy) -> Chain | None:
    """Narrow the chain ends to the predicates' own head types.

    Needed when a model inherited from a supertype supplies an endpoint.
    Returns None when a relation-free chain would merge incomparable types.
    """
    try:
        first = merge_concepts(chain.first, ConceptNode(t1), types)
        if chain.is_empty:
            node = merge_concepts(first, ConceptNode(t2), types)
            return chain.with_ends(node, node)
        last = merge_concepts(chain.last, ConceptNode(t2), types)
    except IncomparableJunctionError:
        return None
    return chain.with_ends(first, last)


class _Search:
    def __init__(self, gr: GramRelEntry, reltypes: TypeHierarchy):
        self.gr = gr
        self.reltypes = reltypes
        self.explored = 0
        self.discarded = 0
        self.pairs_visited = 0
        self.stages: list[StageReport] = []

    def stage(self, method: str, pair: ModelPair | None, chains: Iterable[Chain]) -> list[Candidate]:
        cands = []
        generated = 0
        for ch in chains:
            generated += 1
            r = pref_rank(ch, self.gr, self.reltypes)
            if r is None:
                self.discarded += 1
            else:
                cands.append(Candidate(ch, method, pair, r))
        self.explored += generated
        self.stages.append(StageReport(
            method,
            pair.ranks if pair else None,
            pair.labels if pair else None,
            generated,
            len(cands),
        ))
        return cands

    def result(self, cands: list[Candidate], seed: int | None) -> ResolutionResult:
        ranked = sorted(cands, key=Candidate.sort_key)
        best = (ranked[0].pref_rank, ranked[0].length)
        tied = [c for c in ranked if (c.pref_rank, c.length) == best]
        chosen = tied[0] if seed is None else random.Random(seed).choice(tied)
        return ResolutionResult(chosen, self.explored, self.discarded, self.pairs_visited,
                                tuple(self.stages), tuple(ranked))


def resolve_link(kb, p1: str, gr: str, p2: str, *, max_rel: int = DEFAULT_MAX_REL,
                 seed: int | None = None) -> ResolutionResult:
    """Resolve the triple ``(p1; gr; p2)`` against the knowledge base ``kb``."""
    lex = kb.lexicon
    e1 = lex.lookup_entry(p1)
    grel = lex.lookup_gramrel(gr)
    e2 = lex.lookup_entry(p2)
    types = kb.hierarchy
    t1, t2 = e1.head_type, e2.head_type
    search = _Search(grel, kb.relhierarchy)

    fused = method_fusion(t1, t2, types)
    cands = search.stage(FUSION, None, [fused] if fused is not None else [])
    if cands:
        return search.result(cands, seed)

    def anchored(chains):
        for ch in chains:
            a = _anchor(ch, t1, t2, types)
            if a is not None:
                yield a

    for pair in model_pairs(model_sequence(e1, kb.registry), model_sequence(e2, kb.registry)):
        search.pairs_visited += 1
        g1, g2 = pair.m1.graph, pair.m2.graph
        included = method_inclusion(g1, "left", t2, types, max_rel) + \
            method_inclusion(g2, "right", t1, types, max_rel)
        cands = search.stage(INCLUSION, pair, anchored(included))
        if cands:
            return search.result(cands, seed)
        cands = search.stage(JOIN, pair, anchored(method_join(g1, g2, types, max_rel)))
        if cands:
            return search.result(cands, seed)

    raise NoChainFoundError(
        f"no chain found for ({p1}; {gr}; {p2})",
        search.stages, search.explored, search.discarded, search.pairs_visited,
    )


# -- sentences -------------------------------------------------------------

def sentence_tree(triples: Sequence[tuple[str, str, str]]):
    """Check that ``triples`` form a tree and return ``(root, children)``.

    The root is the parent of the first triple. ``children`` maps each word to
    its ``(gramrel, child)`` links in input order.
    """
    if not triples:
        raise NotATreeError("no triples")
    root = triples[0][0]
    parent_of: dict[str, str] = {}
    children: dict[str, list[tuple[str, str]]] = {}
    for parent, gr, child in triples:
        if child in parent_of:
            raise NotATreeError(f"{child!r} has two parents")
        if child == root:
            raise NotATreeError(f"the root {root!r} cannot be a child")
        parent_of[child] = parent
        children.setdefault(parent, []).append((gr, child))
    for parent in children:
        if parent != root and parent not in parent_of:
            raise NotATreeError(f"{parent!r} is not connected to the root {root!r}")
    # every node has one parent, so any node off the root's tree sits on a cycle
    seen = {root}
    todo = [root]
    while todo:
        w = todo.pop()
        for _, c in children.get(w, ()):
            seen.add(c)
            todo.append(c)
    if len(seen) != len(parent_of) + 1:
        raise NotATreeError("triples contain a cycle")
    return root, children


def compose_sentence(kb, triples: Sequence[tuple[str, str, str]], *,
                     max_rel: int = DEFAULT_MAX_REL, seed: int | None = None):
    """Resolve every link depth-first from the root and merge the chains.

    Returns ``(graph, links)`` where ``links`` lists ``(triple, result)`` in
    resolution order.
    """
    root, children = sentence_tree(triples)
    types = kb.hierarchy
    b = GraphBuilder()
    node_of = {root: b.concept(kb.lexicon.lookup_entry(root).head_type, head=True)}
    links = []

    def visit(word):
        for gr, child in children.get(word, ()):
            res = resolve_link(kb, word, gr, child, max_rel=max_rel, seed=seed)
            links.append(((word, gr, child), res))
            chain = res.chain
            at = node_of[word]
            b.replace(at, merge_concepts(b.node(at), chain.first, types))
            prev = at
            for link, c in zip(chain.links, chain.concepts[1:]):
                nxt = b.concept(c.ctype, referent=c.referent)
                if link.forward:
                    b.relation(link.rtype, prev, nxt)
                else:
                    b.relation(link.rtype, nxt, prev)
                prev = nxt
            node_of[child] = prev
            visit(child)

    visit(root)
    return b.build(), links


def resolve_sentence(kb, triples: Sequence[tuple[str, str, str]], *,
                     max_rel: int = DEFAULT_MAX_REL, seed: int | None = None) -> ConceptualGraph:
    graph, _ = compose_sentence(kb, triples, max_rel=max_rel, seed=seed)
    return graph


__all__ = [
    "FUSION", "INCLUSION", "JOIN", "RankedModel", "ModelPair", "Candidate", "StageReport",
    "ResolutionResult", "specificity_key", "pair_more_specific", "model_sequence",
    "model_pairs", "method_fusion", "method_inclusion", "method_join", "pref_rank",
    "resolve_link", "sentence_tree", "compose_sentence", "resolve_sentence",
]
