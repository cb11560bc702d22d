"""
Type trees and reference models
===============================

Build a tiny ontology by hand, attach reference models to a few types and
watch them being inherited down the tree.
"""

from metochain import ConceptualGraph, GraphBuilder, ModelRegistry, ReferenceModel, TypeHierarchy
from metochain.cg import ConceptNode, render_graph

# A concept type tree has exactly one root; every other type names its parent.
types = TypeHierarchy()
for name, parent in [("Top", None), ("Action", "Top"), ("Medical_Act", "Action"),
                     ("Angioplasty", "Medical_Act"), ("Physical_Object", "Top"),
                     ("Human_Being", "Physical_Object"), ("Artery", "Physical_Object")]:
    types.add_type(name, parent)

print(types.is_subtype("Angioplasty", "Action"))      # True
print(types.comparable("Artery", "Human_Being"))      # False, sibling branches
print(list(types.ancestors("Angioplasty")))

# Reference models are conceptual graphs whose head concept has the model's type.
b = GraphBuilder()
b.concept("Medical_Act", var="act", head=True)
b.concept("Human_Being", var="doc")
b.relation("agt", "act", "doc")
medical_act = ReferenceModel(b.build())

b = GraphBuilder()
b.concept("Angioplasty", var="x", head=True)
b.concept("Artery", var="a")
b.concept("Human_Being", var="p")
b.relation("purported_obj", "x", "a")
b.relation("pat", "x", "p")
angioplasty = ReferenceModel(b.build())

models = ModelRegistry(types)
models.register_model("Medical_Act", medical_act)
models.register_model("Angioplasty", angioplasty)

# The most specific model comes first, then those of its ancestors.
for m in models.inherited_models("Angioplasty"):
    print(m.head_type)
    print(render_graph(m.graph))

# A type with no model of its own still inherits from above, or gets nothing.
print([m.head_type for m in models.inherited_models("Human_Being")])  # []

# Graphs can also be written out directly with indices.
g = ConceptualGraph((ConceptNode("Artery", "LAD"),), (), head=0)
print(render_graph(g))
