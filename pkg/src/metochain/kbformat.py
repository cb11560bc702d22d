"""Reader, writer and validator for the ``.kb`` knowledge-base text format.

Grammar (line oriented, ``#`` starts a comment)::

    type NAME [< PARENT]            concept type; exactly one without parent
    reltype NAME [< PARENT]         relation type; exactly one without parent
    model TYPE { ITEMS }            reference model whose head has type TYPE
    entry WORD { ITEMS }            lexicon definition of WORD
    gramrel NAME prefers REL, ...   grammatical relation, highest priority first

    ITEMS are separated by ``;`` or newlines:
        head VAR: TYPE [= REF]      the head concept (exactly one)
        VAR: TYPE [= REF]           a concept; repeating VAR names the same node
        VAR -REL-> VAR              relation from the first to the second
        VAR <-REL- VAR              relation from the second to the first

Type names may be used before they are declared. Variables must be declared
before an edge uses them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .cg import ConceptualGraph, GraphBuilder, ReferenceModel
from .errors import GraphError, KBParseError
from .lexicon import Lexicon
from .ontology import ModelRegistry, TypeHierarchy

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    code: str
    message: str

    def format(self) -> str:
        return f"{self.severity}:{self.line}:{self.code}: {self.message}"

    def __str__(self) -> str:
        return self.format()


@dataclass
class KnowledgeBase:
    hierarchy: TypeHierarchy
    relhierarchy: TypeHierarchy
    registry: ModelRegistry
    lexicon: Lexicon
    # ("type"|"reltype"|"model"|"entry"|"gramrel", name) -> declaration line
    origins: dict = field(default_factory=dict)
    # ("model"|"entry", name) -> line declaring each concept
    concept_lines: dict = field(default_factory=dict)

    @classmethod
    def new(cls) -> "KnowledgeBase":
        types = TypeHierarchy("type")
        rels = TypeHierarchy("relation type")
        return cls(types, rels, ModelRegistry(types), Lexicon(types, rels))

    def freeze(self) -> "KnowledgeBase":
        self.hierarchy.freeze()
        self.relhierarchy.freeze()
        self.registry.freeze()
        self.lexicon.freeze()
        return self


# -- tokenizer -------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<rarrow>-(?P<rname>\w+)->)
  | (?P<larrow><-(?P<lname>\w+)-)
  | (?P<string>"[^"\n]*")
  | (?P<name>\w+)
  | (?P<punct>[{};:,<=])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    line: int


class _Syntax(Exception):
    def __init__(self, line, message):
        super().__init__(message)
        self.line = line


def _tokenize(text: str):
    toks = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise _Syntax(line, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind in ("rname", "lname"):
            kind = "rarrow" if m.group("rarrow") else "larrow"
        if kind == "rarrow":
            toks.append(_Tok("rarrow", m.group("rname"), line))
        elif kind == "larrow":
            toks.append(_Tok("larrow", m.group("lname"), line))
        elif kind == "string":
            toks.append(_Tok("name", m.group()[1:-1], line))
        elif kind in ("name", "punct"):
            toks.append(_Tok(kind, m.group(), line))
        elif kind == "nl":
            toks.append(_Tok("nl", "\n", line))
            line += 1
        pos = m.end()
    toks.append(_Tok("eof", "", line))
    return toks


# -- pass 1: statements ----------------------------------------------------

@dataclass
class _TypeDecl:
    kind: str
    name: str
    parent: str | None
    line: int


@dataclass
class _GraphDecl:
    kind: str
    name: str
    line: int
    items: list = field(default_factory=list)


@dataclass
class _GramRelDecl:
    name: str
    prefs: list
    line: int


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0
        self.stmts = []
        self.diags = []

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None, what=None):
        t = self.tok
        if t.kind != kind or (value is not None and t.value != value):
            shown = "end of file" if t.kind == "eof" else ("newline" if t.kind == "nl" else repr(t.value))
            raise _Syntax(t.line, f"expected {what or value or kind}, found {shown}")
        return self.advance()

    def end_of_statement(self):
        if self.tok.kind not in ("nl", "eof"):
            raise _Syntax(self.tok.line, f"unexpected {self.tok.value!r} at end of statement")

    def skip_newlines(self):
        while self.tok.kind == "nl":
            self.advance()

    def recover(self):
        depth = 0
        while self.tok.kind != "eof":
            t = self.advance()
            if t.value == "{" and t.kind == "punct":
                depth += 1
            elif t.value == "}" and t.kind == "punct":
                depth -= 1
                if depth <= 0:
                    return
            elif t.kind == "nl" and depth <= 0:
                return

    def parse(self):
        while True:
            self.skip_newlines()
            if self.tok.kind == "eof":
                return
            try:
                self.statement()
            except _Syntax as e:
                self.diags.append(Diagnostic(ERROR, e.line, "SyntaxError", str(e)))
                self.recover()

    def statement(self):
        kw = self.expect("name", what="a statement keyword")
        if kw.value in ("type", "reltype"):
            name = self.expect("name", what=f"{kw.value} name").value
            parent = None
            if self.tok.kind == "punct" and self.tok.value == "<":
                self.advance()
                parent = self.expect("name", what="parent name").value
            self.end_of_statement()
            self.stmts.append(_TypeDecl(kw.value, name, parent, kw.line))
        elif kw.value in ("model", "entry"):
            name = self.expect("name", what=f"{kw.value} name").value
            decl = _GraphDecl(kw.value, name, kw.line)
            self.skip_newlines()
            self.expect("punct", "{")
            self.body(decl)
            self.end_of_statement()
            self.stmts.append(decl)
        elif kw.value == "gramrel":
            name = self.expect("name", what="grammatical relation name").value
            self.expect("name", "prefers")
            prefs = [self.expect("name", what="relation type").value]
            while self.tok.kind == "punct" and self.tok.value == ",":
                self.advance()
                prefs.append(self.expect("name", what="relation type").value)
            self.end_of_statement()
            self.stmts.append(_GramRelDecl(name, prefs, kw.line))
        else:
            raise _Syntax(kw.line, f"unknown statement {kw.value!r}")

    def body(self, decl):
        while True:
            while self.tok.kind == "nl" or (self.tok.kind == "punct" and self.tok.value == ";"):
                self.advance()
            if self.tok.kind == "punct" and self.tok.value == "}":
                self.advance()
                return
            first = self.expect("name", what="a concept or relation item")
            head = False
            if first.value == "head" and self.tok.kind == "name":
                head = True
                first = self.advance()
            if self.tok.kind in ("rarrow", "larrow") and not head:
                arrow = self.advance()
                other = self.expect("name", what="variable").value
                src, tgt = (first.value, other) if arrow.kind == "rarrow" else (other, first.value)
                decl.items.append(("edge", src, arrow.value, tgt, first.line))
            else:
                self.expect("punct", ":")
                ctype = self.expect("name", what="concept type").value
                ref = None
                if self.tok.kind == "punct" and self.tok.value == "=":
                    self.advance()
                    ref = self.expect("name", what="referent").value
                decl.items.append(("concept", first.value, ctype, ref, head, first.line))
            if not (self.tok.kind == "nl" or self.tok.value in (";", "}")):
                raise _Syntax(self.tok.line, f"unexpected {self.tok.value!r} in {decl.kind} body")


# -- pass 2: build ---------------------------------------------------------

def _build_tree(tree: TypeHierarchy, decls, diags, origins, kind, label):
    seen = {}
    for d in decls:
        if d.name in seen:
            diags.append(Diagnostic(ERROR, d.line, "DuplicateDecl",
                                    f"{label} {d.name!r} already declared on line {seen[d.name]}"))
        else:
            seen[d.name] = d.line
    unique = [d for d in decls if seen[d.name] == d.line]
    roots = [d for d in unique if d.parent is None]
    if not roots:
        diags.append(Diagnostic(ERROR, 1, "NoRoot", f"no root {label} declared"))
        return
    for d in roots[1:]:
        diags.append(Diagnostic(ERROR, d.line, "SecondRoot",
                                f"{label} {d.name!r} is a second root (root is {roots[0].name!r})"))
    for d in unique:
        if d.parent is not None and d.parent not in seen:
            diags.append(Diagnostic(ERROR, d.line, "UnknownTypeRef",
                                    f"unknown parent {label} {d.parent!r}"))
    tree.add_type(roots[0].name)
    origins[(kind, roots[0].name)] = roots[0].line
    pending = [d for d in unique if d.parent is not None and d.parent in seen]
    while pending:
        rest = []
        for d in pending:
            if d.parent in tree:
                tree.add_type(d.name, d.parent)
                origins[(kind, d.name)] = d.line
            else:
                rest.append(d)
        if len(rest) == len(pending):
            for d in rest:
                diags.append(Diagnostic(ERROR, d.line, "Cycle",
                                        f"{label} {d.name!r} is part of a parent cycle"))
            return
        pending = rest


def _build_graph(decl: _GraphDecl, kb: KnowledgeBase, diags):
    b = GraphBuilder()
    lines = []
    heads = 0
    ok = True
    for item in decl.items:
        if item[0] == "concept":
            _, var, ctype, ref, head, line = item
            heads += head
            if ctype not in kb.hierarchy:
                diags.append(Diagnostic(ERROR, line, "UnknownTypeRef", f"unknown type {ctype!r}"))
                ok = False
                continue
            n = len(lines)
            try:
                b.concept(ctype, var=var, referent=ref, head=head)
            except GraphError as e:
                diags.append(Diagnostic(ERROR, line, "ConflictingVariable", str(e)))
                ok = False
                continue
            if b.var(var) == n:
                lines.append(line)
        else:
            _, src, rel, tgt, line = item
            if rel not in kb.relhierarchy:
                diags.append(Diagnostic(ERROR, line, "UnknownTypeRef",
                                        f"unknown relation type {rel!r}"))
                ok = False
                continue
            try:
                b.relation(rel, src, tgt)
            except GraphError as e:
                diags.append(Diagnostic(ERROR, line, "BadEdge", str(e)))
                ok = False
    if heads == 0:
        diags.append(Diagnostic(ERROR, decl.line, "MissingHead",
                                f"{decl.kind} {decl.name!r} has no head concept"))
        return None, lines
    if heads > 1:
        diags.append(Diagnostic(ERROR, decl.line, "DuplicateHead",
                                f"{decl.kind} {decl.name!r} declares {heads} heads"))
        return None, lines
    return (b.build() if ok else None), lines


def parse_kb(text: str) -> KnowledgeBase:
    """Parse ``.kb`` text into a frozen KnowledgeBase.

    Raises KBParseError carrying every error diagnostic found.
    """
    try:
        toks = _tokenize(text)
    except _Syntax as e:
        raise KBParseError([Diagnostic(ERROR, e.line, "SyntaxError", str(e))]) from None
    p = _Parser(toks)
    p.parse()
    diags = list(p.diags)
    kb = KnowledgeBase.new()
    stmts = p.stmts
    _build_tree(kb.hierarchy, [s for s in stmts if isinstance(s, _TypeDecl) and s.kind == "type"],
                diags, kb.origins, "type", "type")
    _build_tree(kb.relhierarchy,
                [s for s in stmts if isinstance(s, _TypeDecl) and s.kind == "reltype"],
                diags, kb.origins, "reltype", "relation type")

    for s in stmts:
        if isinstance(s, _GraphDecl):
            key = (s.kind, s.name)
            if key in kb.origins:
                diags.append(Diagnostic(ERROR, s.line, "DuplicateDecl",
                                        f"{s.kind} {s.name!r} already declared on line "
                                        f"{kb.origins[key]}"))
                continue
            kb.origins[key] = s.line
            if s.kind == "model" and s.name not in kb.hierarchy:
                diags.append(Diagnostic(ERROR, s.line, "UnknownTypeRef",
                                        f"model for unknown type {s.name!r}"))
                continue
            g, lines = _build_graph(s, kb, diags)
            kb.concept_lines[key] = tuple(lines)
            if g is None:
                continue
            if s.kind == "model":
                if g.head_type != s.name:
                    diags.append(Diagnostic(ERROR, s.line, "HeadTypeMismatch",
                                            f"model {s.name!r} has head of type {g.head_type!r}"))
                    continue
                kb.registry.register_model(s.name, ReferenceModel(g))
            else:
                kb.lexicon.add_entry(s.name, g)
        elif isinstance(s, _GramRelDecl):
            key = ("gramrel", s.name)
            if key in kb.origins:
                diags.append(Diagnostic(ERROR, s.line, "DuplicateDecl",
                                        f"gramrel {s.name!r} already declared on line "
                                        f"{kb.origins[key]}"))
                continue
            bad = [r for r in s.prefs if r not in kb.relhierarchy]
            for r in bad:
                diags.append(Diagnostic(ERROR, s.line, "UnknownTypeRef",
                                        f"unknown relation type {r!r}"))
            if len(set(s.prefs)) != len(s.prefs):
                diags.append(Diagnostic(ERROR, s.line, "DuplicateDecl",
                                        f"gramrel {s.name!r} repeats a preference"))
                continue
            if not bad:
                kb.origins[key] = s.line
                kb.lexicon.add_gramrel(s.name, s.prefs)

    errors = [d for d in diags if d.severity == ERROR]
    if errors:
        raise KBParseError(sorted(errors, key=lambda d: d.line))
    return kb.freeze()


def load_kb(path) -> KnowledgeBase:
    return parse_kb(Path(path).read_text(encoding="utf-8"))


def default_kb_path() -> Path:
    """Path of the bundled ``menelas-mini.kb`` fixture."""
    return Path(str(resources.files("metochain") / "data" / "menelas-mini.kb"))


# -- validation ------------------------------------------------------------

def _graphs(kb: KnowledgeBase):
    for t, m in kb.registry.items():
        yield "model", t, m.graph
    for w, e in kb.lexicon.entries.items():
        yield "entry", w, e.definition


def validate_kb(kb: KnowledgeBase) -> list[Diagnostic]:
    """Warnings about a loaded KB; an empty list means nothing to report."""
    out = []
    for t in kb.hierarchy:
        if not kb.registry.inherited_models(t):
            out.append(Diagnostic(WARNING, kb.origins.get(("type", t), 0), "NoModel",
                                  f"type {t!r} has no reference model on its ancestor chain"))
    used = set()
    for kind, name, g in _graphs(kb):
        lines = kb.concept_lines.get((kind, name), ())
        reach = g.reachable(g.head)
        for i, c in enumerate(g.concepts):
            if i not in reach:
                line = lines[i] if i < len(lines) else kb.origins.get((kind, name), 0)
                label = g.label(i) or f"#{i}"
                out.append(Diagnostic(WARNING, line, "UnreachableConcept",
                                      f"concept {label} [{c.ctype}] of {kind} {name!r} "
                                      f"is not connected to its head"))
        used.update(r.rtype for r in g.relations)
    for name, gr in kb.lexicon.gramrels.items():
        for pref in gr.prefs:
            if not any(kb.relhierarchy.is_subtype(r, pref) for r in used):
                out.append(Diagnostic(WARNING, kb.origins.get(("gramrel", name), 0),
                                      "UnusedPreference",
                                      f"preference {pref!r} of gramrel {name!r} matches no "
                                      f"model relation"))
    out.sort(key=lambda d: d.line)
    return out


# -- serialization ---------------------------------------------------------

_PLAIN = re.compile(r"\w+\Z")


def _ref(ref: str) -> str:
    return ref if _PLAIN.match(ref) else f'"{ref}"'


def _graph_body(g: ConceptualGraph) -> list[str]:
    taken = {v for v in g.labels if v}
    names = []
    fresh = 0
    for i in range(len(g.concepts)):
        v = g.label(i)
        if v is None:
            while f"c{fresh}" in taken:
                fresh += 1
            v = f"c{fresh}"
            taken.add(v)
        names.append(v)
    lines = []
    for i, c in enumerate(g.concepts):
        head = "head " if i == g.head else ""
        ref = f" = {_ref(c.referent)}" if c.referent is not None else ""
        lines.append(f"  {head}{names[i]}: {c.ctype}{ref}")
    for r in g.relations:
        lines.append(f"  {names[r.source]} -{r.rtype}-> {names[r.target]}")
    return lines


def serialize_kb(kb: KnowledgeBase) -> str:
    out = []
    for t, parent in kb.hierarchy.items():
        out.append(f"type {t}" if parent is None else f"type {t} < {parent}")
    out.append("")
    for t, parent in kb.relhierarchy.items():
        out.append(f"reltype {t}" if parent is None else f"reltype {t} < {parent}")
    for t, m in kb.registry.items():
        out.append("")
        out.append(f"model {t} {{")
        out.extend(_graph_body(m.graph))
        out.append("}")
    for w, e in kb.lexicon.entries.items():
        out.append("")
        out.append(f"entry {w} {{")
        out.extend(_graph_body(e.definition))
        out.append("}")
    if kb.lexicon.gramrels:
        out.append("")
    for name, gr in kb.lexicon.gramrels.items():
        out.append(f"gramrel {name} prefers {', '.join(gr.prefs)}")
    return "\n".join(out) + "\n"
