"""
Sentences and knowledge-base files
==================================

Write a small .kb file, check it, and compose a sentence whose dependency
tree has two links hanging off the same head.
"""

import tempfile
from pathlib import Path

from metochain import (load_kb, parse_kb, render_graph, resolve_sentence, serialize_kb,
                       validate_kb)
from metochain.errors import KBParseError

KB_TEXT = """\
type Top
type Act < Top
type Repair < Act
type Thing < Top
type Pipe < Thing
type Leak < Top
type Person < Top

reltype rel
reltype obj < rel
reltype agt < rel
reltype affects < rel

model Repair {
  head r: Repair
  p: Pipe
  who: Person
  l: Leak
  r -obj-> p
  r -agt-> who
  l -affects-> p
}

entry repair { head x: Repair }
entry leak { head x: Leak }
entry plumber { head x: Person }

gramrel of prefers obj, rel
gramrel by prefers agt
"""

path = Path(tempfile.mkdtemp()) / "plumbing.kb"
path.write_text(KB_TEXT)
kb = load_kb(path)

# Warnings never stop loading; they only point at thin spots in the KB.
for d in validate_kb(kb):
    print(d.format())

# "repair of the leak by the plumber": two links share the parent 'repair'.
triples = [("repair", "of", "leak"), ("repair", "by", "plumber")]
print(render_graph(resolve_sentence(kb, triples)))

# Errors come back as diagnostics with line numbers.
try:
    parse_kb(KB_TEXT + "entry broken { head x: Nope }\n")
except KBParseError as e:
    for d in e.diagnostics:
        print(d.format())

# A KB can be written back out and reloaded unchanged.
text = serialize_kb(kb)
print(serialize_kb(parse_kb(text)) == text)
