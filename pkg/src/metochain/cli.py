"""Command-line front end.

Exit codes: 0 success, 1 no chain found, 2 usage, file or KB errors.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .cg import DEFAULT_MAX_REL, render_graph
from .errors import KBParseError, MetochainError, NoChainFoundError, NotATreeError
from .kbformat import KnowledgeBase, load_kb, validate_kb
from .resolver import compose_sentence, resolve_link


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    raise _Exit(code)


def _load(path) -> KnowledgeBase:
    try:
        return load_kb(path)
    except KBParseError as e:
        for d in e.diagnostics:
            click.echo(d.format(), err=True)
        raise _Exit(2)
    except (OSError, UnicodeDecodeError) as e:
        _fail(f"cannot read {path}: {e}", 2)


def _stats_line(res) -> str:
    return (f"explored={res.explored} discarded={res.discarded} "
            f"pairs={res.pairs_visited} method={res.method}")


def _run(fn):
    try:
        fn()
    except _Exit as e:
        sys.exit(e.code)


def parse_triples(text: str) -> list[tuple[str, str, str]]:
    """Read ``PARENT<TAB>GRAMREL<TAB>CHILD`` lines; blank and ``#`` lines are skipped."""
    triples = []
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.rstrip("\r").split("\t")
        if len(fields) != 3 or not all(f.strip() for f in fields):
            raise ValueError(f"line {n}: expected PARENT<TAB>GRAMREL<TAB>CHILD")
        triples.append(tuple(f.strip() for f in fields))
    return triples


_common = [
    click.option("--stats", is_flag=True, help="Append search statistics."),
    click.option("--json", "as_json", is_flag=True, help="Emit one JSON record."),
    click.option("--seed", type=int, default=None, help="Break ties randomly with this seed."),
    click.option("--max-path-len", type=click.IntRange(min=0), default=DEFAULT_MAX_REL,
                 show_default=True, help="Maximum relations per chain."),
    click.option("--trace", is_flag=True, help="Report every visited search stage."),
]


def common_options(f):
    for opt in reversed(_common):
        f = opt(f)
    return f


@click.group()
@click.version_option(package_name="metochain")
def main():
    """Resolve grammatical links into conceptual-graph chains."""


@main.command()
@click.argument("kb", type=click.Path(exists=True, dir_okay=False))
@click.argument("p1")
@click.argument("gr")
@click.argument("p2")
@click.option("--all", "show_all", is_flag=True, help="List every candidate of the winning stage.")
@common_options
def resolve(kb, p1, gr, p2, show_all, stats, as_json, seed, max_path_len, trace):
    """Resolve the link P1 -GR-> P2 and print the selected chain."""
    def go():
        base = _load(kb)
        try:
            res = resolve_link(base, p1, gr, p2, max_rel=max_path_len, seed=seed)
        except NoChainFoundError as e:
            if trace:
                for s in e.stages:
                    click.echo(s.describe(), err=True)
            _fail(str(e), 1)
        except MetochainError as e:
            _fail(str(e), 2)
        if as_json:
            rec = res.as_record()
            if show_all:
                rec["candidates"] = [
                    {"chain": c.rendered, "pref_rank": c.pref_rank, "length": c.length}
                    for c in res.candidates
                ]
            click.echo(json.dumps(rec, sort_keys=True))
            return
        if show_all:
            for c in res.candidates:
                mark = "*" if c is res.selected else " "
                click.echo(f"{mark} rank={c.pref_rank} len={c.length} {c.rendered}")
        else:
            click.echo(res.selected.rendered)
        if trace:
            for s in res.stages:
                click.echo(s.describe())
        if stats:
            click.echo(_stats_line(res))
    _run(go)


@main.command()
@click.argument("kb", type=click.Path(exists=True, dir_okay=False))
@click.argument("triples", type=click.Path(exists=True, dir_okay=False))
@common_options
def sentence(kb, triples, stats, as_json, seed, max_path_len, trace):
    """Resolve every link of a sentence given as a triple file and print the merged graph."""
    def go():
        base = _load(kb)
        try:
            parsed = parse_triples(Path(triples).read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            _fail(f"{triples}: {e}", 2)
        try:
            graph, links = compose_sentence(base, parsed, max_rel=max_path_len, seed=seed)
        except NoChainFoundError as e:
            _fail(str(e), 1)
        except NotATreeError as e:
            _fail(f"NotATree: {e}", 2)
        except MetochainError as e:
            _fail(str(e), 2)
        if as_json:
            rec = {
                "graph": [
                    {
                        "id": i,
                        "type": c.ctype,
                        "referent": c.referent,
                        "head": i == graph.head,
                        "out": [[r.rtype, r.target] for r in graph.relations if r.source == i],
                    }
                    for i, c in enumerate(graph.concepts)
                ],
                "links": [
                    dict(res.as_record(), parent=t[0], gramrel=t[1], child=t[2])
                    for t, res in links
                ],
            }
            click.echo(json.dumps(rec, sort_keys=True))
            return
        click.echo(render_graph(graph))
        for (p, g, c), res in links:
            if trace:
                for s in res.stages:
                    click.echo(f"{p}\t{g}\t{c}\t{s.describe()}")
            if stats:
                click.echo(f"{p}\t{g}\t{c}\t{_stats_line(res)}")
        if stats:
            click.echo(
                f"total explored={sum(r.explored for _, r in links)} "
                f"discarded={sum(r.discarded for _, r in links)} "
                f"pairs={sum(r.pairs_visited for _, r in links)} links={len(links)}"
            )
    _run(go)


@main.command()
@click.argument("kb", type=click.Path(exists=True, dir_okay=False))
def validate(kb):
    """Check a KB file; print one LEVEL:LINE:MESSAGE diagnostic per line."""
    def go():
        try:
            base = load_kb(kb)
        except KBParseError as e:
            for d in e.diagnostics:
                click.echo(d.format())
            raise _Exit(2)
        except (OSError, UnicodeDecodeError) as e:
            _fail(f"cannot read {kb}: {e}", 2)
        for d in validate_kb(base):
            click.echo(d.format())
    _run(go)


@main.command()
@click.argument("kb", type=click.Path(exists=True, dir_okay=False))
def stats(kb):
    """Summarise a KB: declaration counts and the largest reference model."""
    def go():
        base = _load(kb)
        click.echo(f"types: {len(base.hierarchy)}")
        click.echo(f"relation types: {len(base.relhierarchy)}")
        click.echo(f"models: {len(base.registry)}")
        click.echo(f"entries: {len(base.lexicon.entries)}")
        click.echo(f"gramrels: {len(base.lexicon.gramrels)}")
        if len(base.registry):
            name, m = max(base.registry.items(),
                          key=lambda kv: (len(kv[1].graph.concepts), len(kv[1].graph.relations)))
            click.echo(f"largest model: {name} ({len(m.graph.concepts)} concepts, "
                       f"{len(m.graph.relations)} relations)")
    _run(go)


if __name__ == "__main__":
    main()
