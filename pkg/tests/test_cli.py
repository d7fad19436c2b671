import json
from pathlib import Path

import jsonschema
import pytest

from chern.cli import main
from chern.errors import ParseError, SemanticError
from chern.report import load_schema, mask_volatile
from chern.script import parse_script, print_script

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
SCRIPTS = HERE / "scripts"
SCHEMA = load_schema()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc, err


def write(tmp_path, text, name="s.chern"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def result_of(doc, i=0):
    return doc["reports"][i]["result"]


# -- parsing ---------------------------------------------------------------------------

def test_parse_valid_script():
    s = parse_script("ring R = QQ[x,y] / (x*y); ideal q = (x+y);")
    assert len(s.rings) == 1 and len(s.ideals) == 1


def test_no_ring_in_scope():
    with pytest.raises(SemanticError, match="no ring in scope"):
        parse_script("ideal q = (x+y);")


def test_inhomogeneous_relation():
    with pytest.raises(SemanticError, match="inhomogeneous"):
        parse_script("ring R = QQ[x] / (x - 1);")


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_script("ring R = QQ[x,y];\nideal q = (x+ ;")
    assert info.value.line == 2 and info.value.column > 1


def test_duplicate_and_reserved_names():
    with pytest.raises(SemanticError):
        parse_script("ring R = QQ[x,y]; ideal q = (x); ideal q = (y);")
    with pytest.raises((SemanticError, ParseError)):
        parse_script("ring R = QQ[x,@t];")
    with pytest.raises(SemanticError):
        parse_script("ring R = QQ[x,y]; ideal q = (z);")


@pytest.mark.parametrize("path", sorted(SCRIPTS.glob("*.chern")), ids=lambda p: p.name)
def test_parse_print_round_trip(path):
    s = parse_script(path.read_text())
    text = print_script(s)
    again = parse_script(text)
    assert again == s
    assert print_script(again) == text


def test_corpus_export_round_trip(capsys):
    code, out, _ = run(capsys, "corpus", "export", "t345-x")
    assert code == 0
    s = parse_script(out)
    assert print_script(parse_script(print_script(s))) == print_script(s)


# -- commands ----------------------------------------------------------------------------

def test_chern_of_maximal_ideal(tmp_path, capsys):
    p = write(tmp_path, "ring R = QQ[x,y]; ideal m = (x,y); chern m;")
    code, doc, _ = run_json(capsys, "run", p)
    assert code == 0 and result_of(doc)["e1"] == 0


def test_verify_embedded_point(capsys):
    code, doc, _ = run_json(capsys, "run", str(SCRIPTS / "embedded.chern"))
    assert code == 0
    res = result_of(doc)
    assert res["cm"]["is_cm"] is False
    assert res["flags"]["unmixed"] == "false"


def test_corpus_run_goto_sakurai_printed_values(capsys):
    # printed values at m = 2; see the corpus tests for what the build computes
    code, doc, _ = run_json(capsys, "corpus", "run", "goto-sakurai-2-2")
    assert code == 0
    vals = result_of(doc)["values"]
    assert (vals["e1_I"], vals["e1_q"], vals["index_of_reducibility"]) == (0, -1, 1)


def test_corpus_list(capsys):
    code, doc, _ = run_json(capsys, "corpus", "list")
    assert code == 0
    ids = [e["id"] for e in result_of(doc)["entries"]]
    assert "node" in ids and "goto-sakurai-2-2" in ids


def test_text_output(tmp_path, capsys):
    p = write(tmp_path, "ring R = QQ[x,y]; ideal q = (x^2,y^2); colength q;")
    code, out, _ = run(capsys, "run", p)
    assert code == 0 and "colength: 4" in out


def test_stdin_script(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("ring R = QQ[x,y]; ideal q = (x^2,y^2); colength q;"))
    code, doc, _ = run_json(capsys, "run", "-")
    assert code == 0 and result_of(doc)["colength"] == 4


def test_batch_prime(capsys):
    code, doc, _ = run_json(capsys, "batch", "node", "--strategy", "random-forms",
                            "--samples", "2", "--seed", "3", "--prime", "32003")
    assert code == 0
    rep = doc["reports"][0]
    assert rep["command"].endswith("--prime 32003") and rep["seed"] == 3
    from chern.theorems import FINITE_FIELD_WARNING

    items = rep["result"]["items"]
    assert len(items) == 2
    assert all(FINITE_FIELD_WARNING in it["warnings"] for it in items)


def test_batch_seed_deterministic(capsys):
    argv = ("batch", "node,quadric-yz", "--strategy", "random-forms", "--seed", "9")
    _, a, _ = run_json(capsys, *argv)
    _, b, _ = run_json(capsys, *argv)
    assert mask_volatile(a) == mask_volatile(b)


def test_large_integers_as_strings():
    from chern.report import json_safe

    assert json_safe({"a": 2 ** 60, "b": -5, "c": [2 ** 53]}) == {"a": str(2 ** 60), "b": -5, "c": [2 ** 53]}


# -- exit codes --------------------------------------------------------------------------

def test_exit_user_errors(tmp_path, capsys):
    code, doc, err = run_json(capsys, "run", write(tmp_path, "ideal q = (x+y);"))
    assert code == 2 and doc["error"]["exit_code"] == 2 and "no ring in scope" in err
    code, doc, _ = run_json(capsys, "run", write(tmp_path, "ring R = QQ[x,y];\nideal q = (x+ ;"))
    assert code == 2 and doc["error"]["line"] == 2
    code, doc, _ = run_json(capsys, "run", str(tmp_path / "missing.chern"))
    assert code == 2
    code, doc, _ = run_json(capsys, "run", write(tmp_path, "ring R = QQ[x,y]; ideal q = (x); cmtest q;"))
    assert code == 2
    code, doc, _ = run_json(capsys, "corpus", "run", "no-such-ring")
    assert code == 2
    code, _, _ = run(capsys, "batch", "node", "--prime", "12")
    assert code == 2
    code, _, _ = run(capsys, "bogus-mode")
    assert code == 2


def test_exit_invariant_failure(tmp_path, capsys, monkeypatch):
    from chern import commands
    from chern.errors import InvariantError

    def broken(*a, **k):
        raise InvariantError("colength went negative")

    monkeypatch.setitem(commands._DISPATCH, "colength", broken)
    code, doc, _ = run_json(capsys, "run", write(tmp_path, "ring R = QQ[x,y]; ideal q = (x^2,y^2); colength q;"))
    assert code == 3 and doc["error"]["exit_code"] == 3


def test_exit_success_and_version(capsys):
    assert run(capsys, "--version")[0] == 0
    code, out, _ = run(capsys, "corpus", "run", "regular-2-m")
    assert code == 0


# -- golden files ----------------------------------------------------------------------

GOLDEN_CASES = {
    "corpus-node": ("corpus", "run", "node"),
    "corpus-t345-x": ("corpus", "run", "t345-x"),
    "corpus-embedded-point": ("corpus", "run", "embedded-point"),
    "script-session": ("run", str(SCRIPTS / "session.chern")),
    "batch-node-random": ("batch", "node", "--strategy", "random-forms", "--samples", "2", "--seed", "5"),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys, update_golden):
    code, doc, _ = run_json(capsys, *GOLDEN_CASES[name])
    assert code == 0
    text = json.dumps(mask_volatile(doc), indent=2) + "\n"
    path = GOLDEN / f"{name}.json"
    if update_golden:
        path.write_text(text)
    assert path.exists(), f"missing {path.name}; run pytest --update-golden"
    assert path.read_text() == text
