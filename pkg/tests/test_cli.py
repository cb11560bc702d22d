import json
import os
import pathlib
import shlex

import pytest
from click.testing import CliRunner

from metochain.cli import main, parse_triples

ROOT = pathlib.Path(__file__).parent
DATA = ROOT / "data"
DATA_PATHS = sorted(DATA.glob("*.in"))

# set METOCHAIN_REGEN=1 to rewrite the .out files after an intended change
REGEN = os.environ.get("METOCHAIN_REGEN") == "1"


def invoke(args, kb_path):
    runner = CliRunner()
    argv = [a.format(kb=kb_path, data=DATA) for a in args]
    return runner.invoke(main, argv, catch_exceptions=False)


def scrub(text, kb_path):
    return text.replace(str(kb_path), "{kb}").replace(str(DATA), "{data}")


@pytest.fixture(params=DATA_PATHS, ids=lambda p: p.stem)
def case(request):
    inp = request.param
    lines = inp.read_text().splitlines()
    return shlex.split(lines[0]), int(lines[1]), inp.with_suffix(".out")


def test_golden(case, kb_path):
    args, code, outp = case
    result = invoke(args, kb_path)
    output = scrub(result.output, kb_path)
    if REGEN:
        outp.write_text(output)
    assert result.exit_code == code
    assert output == outp.read_text()


def test_json_agrees_with_text(kb_path):
    for word in ("segment_II_f", "artere_coronaire_f", "monsieur_f", "stenose_f"):
        base = ["resolve", str(kb_path), "angioplastie_f", "de_f", word]
        text = invoke(base + ["--stats"], kb_path).output.splitlines()
        rec = json.loads(invoke(base + ["--json"], kb_path).output)
        assert rec["chain"] == text[0]
        assert text[1] == (f"explored={rec['explored']} discarded={rec['discarded']} "
                           f"pairs={rec['pairs']} method={rec['method']}")


def test_single_triple_sentence_matches_resolve(kb_path, tmp_path):
    from metochain import load_kb
    from metochain.cg import chain_graph, render_graph
    from metochain.resolver import resolve_link

    kb = load_kb(kb_path)
    for word in ("segment_II_f", "monsieur_f"):
        f = tmp_path / f"{word}.tsv"
        f.write_text(f"angioplastie_f\tde_f\t{word}\n")
        out = invoke(["sentence", str(kb_path), str(f)], kb_path).output
        chain = resolve_link(kb, "angioplastie_f", "de_f", word).chain
        assert out == render_graph(chain_graph(chain)) + "\n"


def test_seed_option_is_reproducible(kb_path):
    args = ["resolve", str(kb_path), "angioplastie_f", "de_f", "segment_II_f", "--seed", "7"]
    assert invoke(args, kb_path).output == invoke(args, kb_path).output


def test_missing_kb_file_is_usage_error(tmp_path):
    result = CliRunner().invoke(main, ["stats", str(tmp_path / "none.kb")])
    assert result.exit_code == 2


def test_broken_kb_reports_diagnostics(tmp_path):
    p = tmp_path / "bad.kb"
    p.write_text("type Top\ntype A < Nope\nreltype rel\n")
    result = CliRunner().invoke(main, ["validate", str(p)])
    assert result.exit_code == 2
    assert result.output == "error:2:UnknownTypeRef: unknown parent type 'Nope'\n"
    result = CliRunner().invoke(main, ["resolve", str(p), "a", "b", "c"])
    assert result.exit_code == 2


def test_parse_triples():
    assert parse_triples("# x\n\na\tb\tc\n") == [("a", "b", "c")]
    with pytest.raises(ValueError, match="line 2"):
        parse_triples("a\tb\tc\na b c\n")
