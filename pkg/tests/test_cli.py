import json
import re
import subprocess
import sys

import pytest

from crossed_codes.cli import run
from crossed_codes.cocycles import CoeffModule, standard_cocycle
from crossed_codes.ffield import FrobAction, make_tower


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_classify_cyclic(capsys):
    rep = report(capsys, "classify-cyclic", "--n", "4", "--q", "5", "--r", "1", "--k", "1")
    assert rep["command"] == "classify-cyclic"
    assert rep["result"]["count"] == 3 and rep["result"]["m"] == 4
    assert rep["result"]["classes"] == [[1, 3], [2], [4]]
    assert rep["oracle_agreement"] is True
    assert set(rep) == {"command", "parameters", "result", "oracle_agreement"}


def test_wedderburn(capsys):
    rep = report(capsys, "wedderburn", "--p", "2", "--s", "4", "--i", "2")
    res = rep["result"]
    assert (res["matrix_size"], res["copies"], res["simple"]) == (4, 1, True)
    assert rep["oracle_agreement"] is True


def test_isometric_identical_files(capsys, tmp_path):
    t = make_tower(5, 1)
    f = standard_cocycle(4, CoeffModule.from_field(t, FrobAction(4, 1, 1)), 1)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_json()))
    rep = report(capsys, "isometric", str(path), str(path), "--q", "5")
    assert rep["result"]["isometric"] is True and rep["result"]["psi"] == 1


def test_isometric_standard_betas(capsys):
    rep = report(capsys, "isometric", "--q", "5", "--n", "4", "--standard-beta", "1", "3")
    assert rep["result"]["isometric"] and rep["result"]["psi"] == 3
    rep = report(capsys, "isometric", "--q", "5", "--n", "4", "--standard-beta", "1", "2")
    assert rep["result"] == {"isometric": False} and rep["oracle_agreement"] is True


def test_h2_reports(capsys):
    rep = report(capsys, "h2", "--n", "4", "--q", "5")
    assert rep["result"]["invariant_factors"] == [4]
    assert rep["result"]["orbit_count"] == 3
    assert rep["result"]["orbits"] == [[[0]], [[1], [3]], [[2]]]
    rep = report(capsys, "h2", "--group", "elab", "--p", "2", "--s", "2", "--N", "2")
    assert rep["result"]["order"] == 8 and rep["result"]["orbit_count"] == 4


def test_semisimple_and_codes(capsys):
    rep = report(capsys, "semisimple", "--n", "4", "--q", "2", "--r", "2", "--k", "1")
    assert rep["result"]["closed_form"] is False and rep["result"]["empirical"] is False
    rep = report(capsys, "codes", "--n", "3", "--q", "2")
    res = rep["result"]
    assert res["count"] == 4 and res["semisimple"] is True
    assert [(c["rank"], c["min_distance"]) for c in res["codes"]] == [(0, None), (1, 3), (2, 2), (3, 1)]
    rep = report(capsys, "codes", "--n", "2", "--q", "2", "--r", "2", "--k", "1", "--left")
    assert rep["result"]["count"] == 5 and rep["parameters"]["sided"] == "left"


def test_classify_elab(capsys):
    rep = report(capsys, "classify-elab", "--p", "2", "--s", "2", "--q", "3")
    res = rep["result"]
    assert res["count"] == 2 and res["i_values"] == [0, 1]
    assert res["wedderburn"] == [[1, 4], [2, 1]]
    assert res["finite_field_count"] == res["orbit_count"] == 4
    assert rep["oracle_agreement"] is True


def test_argument_errors_exit_2(capsys):
    code, _, err = call(capsys, "classify-cyclic", "--n", "4", "--q", "4")
    assert code == 2 and "not prime" in err
    code, _, err = call(capsys, "classify-cyclic", "--q", "5")
    assert code == 2 and "usage" in err
    code, _, _ = call(capsys, "frobnicate")
    assert code == 2
    code, _, err = call(capsys, "wedderburn", "--p", "2", "--s", "3", "--i", "2")
    assert code == 2


def parse_text(text):
    """Rebuild the report from 'path: json-value' lines."""
    root = {}
    for line in text.splitlines():
        path, value = line.split(": ", 1)
        tokens = re.findall(r"[^.\[\]]+|\[\d+\]", path)
        node = root
        for tok, nxt in zip(tokens, tokens[1:] + [None]):
            key = int(tok[1:-1]) if tok.startswith("[") else tok
            if nxt is None:
                child = json.loads(value)
            else:
                child = [] if nxt.startswith("[") else {}
            if isinstance(node, list):
                if key == len(node):
                    node.append(child)
                node = node[key]
            else:
                node = node.setdefault(key, child)
    return root


@pytest.mark.parametrize("args", [
    ["classify-cyclic", "--n", "6", "--q", "7"],
    ["codes", "--n", "3", "--q", "2"],
    ["h2", "--group", "elab", "--p", "2", "--s", "2", "--N", "2"],
    ["classify-elab", "--p", "3", "--s", "2"],
])
def test_text_format_carries_the_same_information(capsys, args):
    rep = report(capsys, *args)
    _, text, _ = call(capsys, *args, "--format", "text")
    assert parse_text(text) == rep


def test_output_is_deterministic(capsys):
    args = ["verify-grid", "--qs", "2", "3", "--rs", "1", "2", "--max-n", "4", "--samples", "5",
            "--only", "h2", "orbits", "isometry", "normal-form"]
    first = call(capsys, *args)
    second = call(capsys, *args)
    assert first == second and first[0] == 0
    rep = json.loads(first[1])
    assert rep["oracle_agreement"] is True
    assert [c["key"] for c in rep["result"]["checks"]] == ["h2", "orbits", "isometry", "normal-form"]


def test_disagreement_exits_1(capsys, monkeypatch):
    import crossed_codes.cli as cli
    monkeypatch.setattr(cli, "classify_cyclic",
                        lambda p: type("C", (), {"m": 4, "count": 99, "classes": [], "representatives": []})())
    code, out, _ = call(capsys, "classify-cyclic", "--n", "4", "--q", "5")
    assert code == 1 and json.loads(out)["oracle_agreement"] is False


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "crossed_codes", "wedderburn", "--p", "3", "--s", "2", "--i", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["simple"] is True
