"""Resolve grammatical links into conceptual-graph chains through domain models."""

from .cg import (
    DEFAULT_MAX_REL,
    Chain,
    ConceptNode,
    ConceptualGraph,
    GraphBuilder,
    Link,
    ReferenceModel,
    RelationNode,
    enumerate_paths,
    join_chains,
    render_graph,
    render_linear,
    restrict,
)
from .kbformat import (
    Diagnostic,
    KnowledgeBase,
    default_kb_path,
    load_kb,
    parse_kb,
    serialize_kb,
    validate_kb,
)
from .lexicon import GramRelEntry, Lexicon, PredicateEntry
from .ontology import ModelRegistry, TypeHierarchy
from .resolver import (
    ModelPair,
    ResolutionResult,
    compose_sentence,
    model_sequence,
    pair_more_specific,
    pref_rank,
    resolve_link,
    resolve_sentence,
)

__version__ = "0.1.0"
