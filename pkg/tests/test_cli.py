import json
import subprocess
import sys

import pytest

from treespaces.cli import run

CHI_ROOT = '{"coeffs": [{"node": [], "value": "1"}]}'


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_ordinal_commands(capsys):
    code, out, _ = call(capsys, "ordinal", "msform", "w*2+3")
    assert code == 0 and json.loads(out) == {"alpha": "1", "height": "2", "m": 2}
    assert call(capsys, "ordinal", "add", "w+3", "w")[1] == '"w*2"'
    assert call(capsys, "ordinal", "fs", "w^2", "2")[1] == '"w*3"'


def test_elem_commands(capsys):
    code, out, _ = call(capsys, "elem", "norm", CHI_ROOT)
    assert code == 0 and json.loads(out) == "1/1"
    a = '{"coeffs": [{"node": [], "value": "1/2"}, {"node": [0], "value": "-1"}]}'
    assert json.loads(call(capsys, "elem", "posnorm", a)[1]) == "1/2"
    assert json.loads(call(capsys, "elem", "trunk-approx", a, "--eps", "1")[1]) == [[], [0]]


def test_tree_commands(capsys):
    assert call(capsys, "tree", "rank", "--tree", "w", "[3]")[1] == '"4"'
    code, out, _ = call(capsys, "tree", "trunk-validate", "[[], [0, 1]]")
    assert code == 1 and "VIOLATIONS" in out


def test_exit_code_two_on_bad_input(capsys):
    code, _, err = call(capsys, "ordinal", "cbrank", "w^^2")
    assert code == 2 and err.startswith("error:")
    assert call(capsys, "elem", "norm", "{not json")[0] == 2
    assert call(capsys, "elem", "sup", CHI_ROOT)[0] == 2
    assert call(capsys, "elem", "norm", '{"coeffs": [{"node": [], "value": 0.5}]}')[0] == 2


def test_json_flag_and_out_file(capsys, tmp_path):
    op = call(capsys, "hol", "random", "4", "2", "--seed", "3")[1]
    path = tmp_path / "op.json"
    path.write_text(op)
    code, out, _ = call(capsys, "hol", "verify", str(path), "--json")
    assert code == 0 and json.loads(out)["ok"] is True
    target = tmp_path / "ex.json"
    assert call(capsys, "hol", "extract", str(path), "--out", str(target))[0] == 0
    ex = json.loads(target.read_text())
    assert set(ex) == {"F", "rho", "sigma", "phi"}


def test_projtree_round(capsys, tmp_path):
    data = call(capsys, "projtree", "canonical", "--trunk", "[[], [0], [1]]")[1]
    path = tmp_path / "d.json"
    path.write_text(data)
    code, out, _ = call(capsys, "projtree", "verify", str(path))
    assert code == 0 and out.startswith("biorthogonality: ok")
    g = '{"terms": [{"word": "00", "value": "1"}]}'
    assert json.loads(call(capsys, "projtree", "project", str(path), g)[1]) == {"terms": []}


def test_embed_and_invert(capsys):
    f = call(capsys, "embed", "cantor", CHI_ROOT)[1]
    back = json.loads(call(capsys, "invert", "cantor", f)[1])
    assert back["coeffs"] == [{"node": [], "copy": 1, "value": "1/1"}]


def test_output_is_deterministic(capsys):
    a = call(capsys, "hol", "random", "6", "3", "--seed", "11")[1]
    b = call(capsys, "hol", "random", "6", "3", "--seed", "11")[1]
    assert a == b


def test_selftest_single_suite(capsys):
    code, out, _ = call(capsys, "selftest", "--suite", "ordinal")
    assert code == 0 and out.startswith("[PASS] criterion 9")
    assert call(capsys, "selftest", "--suite", "nope")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "treespaces", "ordinal", "pow", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == '"w^2"'
