import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metochain import ConceptualGraph, ModelRegistry, ReferenceModel, TypeHierarchy
from metochain.cg import ConceptNode
from metochain.errors import (
    DuplicateModelError,
    DuplicateTypeError,
    FrozenError,
    HeadTypeMismatchError,
    IncomparableTypesError,
    SecondRootError,
    UnknownParentError,
    UnknownTypeError,
)

from oracle import ancestor_sets
from randkb import random_tree


def single(t):
    return ReferenceModel(ConceptualGraph((ConceptNode(t),), (), 0))


def test_add_type_builds_tree():
    h = TypeHierarchy()
    h.add_type("Top")
    h.add_type("Artery", "Top")
    assert h.root == "Top"
    assert h.parent("Artery") == "Top"
    assert len(h) == 2


def test_add_type_errors():
    h = TypeHierarchy()
    h.add_type("Top")
    h.add_type("Artery", "Top")
    with pytest.raises(DuplicateTypeError):
        h.add_type("Artery", "Top")
    with pytest.raises(UnknownParentError):
        h.add_type("Vein", "Vessel")
    with pytest.raises(SecondRootError):
        h.add_type("Other")


def test_frozen_hierarchy_rejects_mutation():
    h = TypeHierarchy()
    h.add_type("Top")
    h.freeze()
    with pytest.raises(FrozenError):
        h.add_type("X", "Top")


def test_fixture_subsumption(kb):
    h = kb.hierarchy
    assert h.is_subtype("Stenosis", "Stenosis")
    assert h.is_subtype("Coronary_Artery", "Artery")
    assert not h.is_subtype("Artery", "Coronary_Artery")
    assert h.comparable("Artery", "Coronary_Artery")
    assert h.more_specific("Artery", "Coronary_Artery") == "Coronary_Artery"
    assert h.more_specific("Stenosis", "Stenosis") == "Stenosis"


@pytest.mark.parametrize("a,b", [
    ("Segment", "Artery"), ("Segment", "Stenosis"), ("Segment", "Human_Being"),
    ("Artery", "Stenosis"), ("Artery", "Human_Being"), ("Stenosis", "Human_Being"),
])
def test_four_themes_pairwise_incomparable(kb, a, b):
    assert not kb.hierarchy.comparable(a, b)
    with pytest.raises(IncomparableTypesError):
        kb.hierarchy.more_specific(a, b)


def test_artery_segment_incomparable_with_the_four_themes(kb):
    for t in ("Segment_II", "Coronary_Artery", "Stenosis", "Human_Being"):
        assert not kb.hierarchy.comparable("Artery_Segment", t)


def test_angioplasty_and_segment_ii_incomparable(kb):
    assert not kb.hierarchy.comparable("Angioplasty", "Segment_II")


def test_root_comparable_with_everything(kb):
    for t in kb.hierarchy:
        assert kb.hierarchy.comparable("Top", t)


def test_unknown_type_queries(kb):
    with pytest.raises(UnknownTypeError):
        kb.hierarchy.is_subtype("Nope", "Top")
    with pytest.raises(UnknownTypeError):
        kb.hierarchy.comparable("Top", "Nope")


def test_register_model_errors():
    h = TypeHierarchy()
    h.add_type("Top")
    h.add_type("Angioplasty", "Top")
    h.add_type("Stenosis", "Top")
    reg = ModelRegistry(h)
    reg.register_model("Angioplasty", single("Angioplasty"))
    with pytest.raises(DuplicateModelError):
        reg.register_model("Angioplasty", single("Angioplasty"))
    with pytest.raises(HeadTypeMismatchError):
        reg.register_model("Stenosis", single("Angioplasty"))
    with pytest.raises(UnknownTypeError):
        reg.register_model("Nope", single("Nope"))


def test_inherited_models_order():
    h = TypeHierarchy()
    for t, p in [("Top", None), ("A", "Top"), ("B", "A"), ("C", "B")]:
        h.add_type(t, p)
    reg = ModelRegistry(h)
    assert reg.inherited_models("C") == []
    reg.register_model("C", single("C"))
    reg.register_model("A", single("A"))
    assert [m.head_type for m in reg.inherited_models("C")] == ["C", "A"]
    assert [m.head_type for m in reg.inherited_models("B")] == ["A"]


def test_fixture_inherited_models(kb):
    assert [m.head_type for m in kb.registry.inherited_models("Angioplasty")] == \
        ["Angioplasty", "Medical_Act"]
    assert kb.registry.inherited_models("Stenosis") == []


def _hierarchy(parents):
    h = TypeHierarchy()
    for t, p in parents.items():
        h.add_type(t, p)
    return h


trees = st.integers(min_value=1, max_value=50).flatmap(
    lambda n: st.integers(min_value=0, max_value=2**32 - 1).map(
        lambda seed: random_tree(random.Random(seed), n)))


@settings(max_examples=60, deadline=None)
@given(trees)
def test_subsumption_is_a_partial_order(parents):
    h = _hierarchy(parents)
    names = list(parents)
    for a in names:
        assert h.is_subtype(a, a)
        for b in names:
            if a != b and h.is_subtype(a, b):
                assert not h.is_subtype(b, a)
            for c in names[:10]:
                if h.is_subtype(a, b) and h.is_subtype(b, c):
                    assert h.is_subtype(a, c)


@settings(max_examples=60, deadline=None)
@given(trees, st.booleans())
def test_subsumption_matches_ancestor_oracle(parents, frozen):
    h = _hierarchy(parents)
    if frozen:
        h.freeze()
    anc = ancestor_sets(parents)
    for a in parents:
        for b in parents:
            assert h.is_subtype(a, b) == (b in anc[a])


@settings(max_examples=40, deadline=None)
@given(trees)
def test_comparable_symmetric_and_more_specific_is_narrower(parents):
    h = _hierarchy(parents)
    for a in parents:
        for b in parents:
            assert h.comparable(a, b) == h.comparable(b, a)
            if h.comparable(a, b):
                m = h.more_specific(a, b)
                assert m in (a, b)
                assert h.is_subtype(m, a) and h.is_subtype(m, b)


@settings(max_examples=40, deadline=None)
@given(trees, st.integers(min_value=0, max_value=2**32 - 1))
def test_inherited_models_strictly_ordered(parents, seed):
    rng = random.Random(seed)
    h = _hierarchy(parents)
    reg = ModelRegistry(h)
    for t in parents:
        if rng.random() < 0.4:
            reg.register_model(t, single(t))
    for t in parents:
        heads = [m.head_type for m in reg.inherited_models(t)]
        assert len(heads) == len(set(heads))
        depths = [h.depth(x) for x in heads]
        assert depths == sorted(depths, reverse=True)
        assert all(h.is_subtype(t, x) for x in heads)
