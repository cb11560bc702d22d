"""
Resolving a grammatical link
============================

Load the bundled coronary-disease knowledge base and resolve the noun-noun
links of four "angioplasty of ..." phrases. Each link becomes a chain of
conceptual relations between the two head concepts.
"""

from metochain import default_kb_path, load_kb, resolve_link

kb = load_kb(default_kb_path())

# 'de_f' is the French preposition "de"; its relation preferences come first.
print(kb.lexicon.lookup_gramrel("de_f").prefs)

for word in ["segment_II_f", "artere_coronaire_f", "monsieur_f", "stenose_f"]:
    res = resolve_link(kb, "angioplastie_f", "de_f", word)
    print(f"{word:20} {res.method:9} {res.chain}")

# The direct reading "angioplasty of a stenosis" is a type clash: nothing in
# the tree makes Stenosis an object of Angioplasty. The Angioplasty model
# bridges the gap through the artery segment bearing the stenosis.

# Every visited search stage is recorded, so the failed attempts are visible.
res = resolve_link(kb, "angioplastie_f", "de_f", "segment_II_f")
for stage in res.stages:
    print(stage.describe())
print(f"explored={res.explored} discarded={res.discarded} pairs={res.pairs_visited}")

# All candidates of the winning stage, best first.
for c in sorted(res.candidates, key=lambda c: c.sort_key()):
    print(c.pref_rank, c.length, c.rendered)

# A shorter path bound changes what the models can offer.
print(resolve_link(kb, "angioplastie_f", "de_f", "monsieur_f", max_rel=1).chain)
