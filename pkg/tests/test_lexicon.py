import pytest

from metochain import ConceptualGraph, GraphBuilder, Lexicon
from metochain.cg import ConceptNode
from metochain.errors import (
    DuplicateGramRelError,
    DuplicateWordError,
    EmptyPreferencesError,
    MissingHeadError,
    UnknownGramRelError,
    UnknownRelationTypeError,
    UnknownTypeError,
    UnknownWordError,
)

DE_F = ["purported_obj", "involved_obj", "pat", "motivated_by", "before_state", "after_state",
        "rel"]


@pytest.fixture
def lex(kb):
    return Lexicon(kb.hierarchy, kb.relhierarchy)


def one(t, head=True):
    return ConceptualGraph((ConceptNode(t),), (), 0 if head else None)


def segment_ii():
    b = GraphBuilder()
    b.concept("Segment_II", var="x", head=True)
    b.concept("Artery", var="a")
    b.relation("relative_to", "x", "a")
    b.concept("Spatial_Object", var="so")
    b.relation("spatial_role", "so", "x")
    b.concept("Artery_Segment", var="as")
    b.relation("zone_of", "so", "as")
    return b.build()


def test_add_and_lookup_entries(lex):
    lex.add_entry("angioplastie_f", one("Angioplasty"))
    lex.add_entry("segment_II_f", segment_ii())
    assert lex.lookup_entry("angioplastie_f").head_type == "Angioplasty"
    assert lex.lookup_entry("segment_II_f").definition.head_type == "Segment_II"
    with pytest.raises(DuplicateWordError):
        lex.add_entry("angioplastie_f", one("Angioplasty"))
    with pytest.raises(MissingHeadError):
        lex.add_entry("sans_tete_f", one("Angioplasty", head=False))
    with pytest.raises(UnknownTypeError):
        lex.add_entry("bad_f", one("NotAType"))


def test_unknown_word_message(lex):
    with pytest.raises(UnknownWordError, match="unknown word 'missing'"):
        lex.lookup_entry("missing")


def test_gramrel_preferences(lex):
    lex.add_gramrel("de_f", DE_F)
    assert lex.lookup_gramrel("de_f").prefs == tuple(DE_F)
    assert lex.lookup_gramrel("de_f").prefs[0] == "purported_obj"
    with pytest.raises(DuplicateGramRelError):
        lex.add_gramrel("de_f", ["rel"])
    with pytest.raises(UnknownRelationTypeError):
        lex.add_gramrel("a_f", ["purported_obj", "foo"])
    with pytest.raises(EmptyPreferencesError):
        lex.add_gramrel("a_f", [])
    with pytest.raises(DuplicateGramRelError):
        lex.add_gramrel("a_f", ["pat", "pat"])
    with pytest.raises(UnknownGramRelError):
        lex.lookup_gramrel("a_f")


def test_fixture_lexicon(kb):
    assert kb.lexicon.lookup_entry("stenose_f").definition.concepts == (ConceptNode("Stenosis"),)
    assert kb.lexicon.lookup_gramrel("de_f").prefs == tuple(DE_F)


def test_fixture_definitions_validate(kb):
    for e in kb.lexicon.entries.values():
        e.definition.validate(kb.hierarchy, kb.relhierarchy)
