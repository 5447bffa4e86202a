import json

import pytest

from perfcode.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,code", [
    (["check", "--group", "cyclic:4", "--subgroup", "2"], 1),
    (["check", "--group", "sym:3", "--subgroup", "(12)"], 0),
    (["check", "--group", "cyclic:6", "--subgroup", "3", "--cross-validate"], 0),
    (["check", "--group", "nope:3", "--subgroup", "1"], 2),
    (["check", "--group", "cyclic:6", "--subgroup", "x"], 2),
    (["check", "--group", "sym:4", "--subgroup", "(123)", "--method", "transversal_backtracking",
      "--limit", "2"], 3),
    (["graph-check", "--group", "cyclic:6", "--s", "1,5", "--c", "0,3"], 0),
    (["graph-check", "--group", "cyclic:6", "--s", "1,5", "--c", "0,2"], 1),
    (["graph-check", "--group", "cyclic:6", "--s", "1", "--c", "0,3"], 2),
    (["graph-check", "--group", "cyclic:6", "--s", "0,1,5", "--c", "0,3"], 2),
    (["reproduce", "--n", "9"], 2),
    (["enumerate", "--group", "cyclic:1"], 0),
    (["enumerate", "--group", "sym:5"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_cross_validate_methods(capsys):
    code, out, _ = run(capsys, "check", "--group", "cyclic:6", "--subgroup", "3", "--cross-validate",
                       "--format", "json")
    d = json.loads(out)
    agreeing = [m for m in d["methods"] if m["outcome"] == "perfect_code"]
    assert len(agreeing) >= 3 and d["verdict"] == "perfect_code"


def test_enumerate_outputs(capsys):
    code, out, _ = run(capsys, "enumerate", "--group", "cyclic:6", "--format", "json")
    d = json.loads(out)
    assert len(d["subgroups"]) == 4 and all(s["verdict"] == "perfect_code" for s in d["subgroups"])
    code, out, _ = run(capsys, "enumerate", "--group", "quaternion:8", "--format", "json")
    verdicts = {tuple(s["elements"]): s["verdict"] for s in json.loads(out)["subgroups"]}
    assert verdicts[("0", "1")] == "not_perfect_code"
    code, out, _ = run(capsys, "enumerate", "--group", "cyclic:1")
    assert "subgroups: 1" in out and "perfect_code" in out


def test_reproduce_n1_cli(capsys):
    code, out, _ = run(capsys, "reproduce", "--n", "1")
    assert code == 0 and "overall: pass (8/8 checks)" in out


def test_affine_subgroup_literals(capsys):
    code, out, _ = run(capsys, "check", "--group", "agl:1", "--subgroup", "1,0;1,0,0,1 0,1;1,0,0,1",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "perfect_code"
    code, _, err = run(capsys, "check", "--group", "agl:1", "--subgroup", "1,0;1,1,1,1")
    assert code == 2 and "singular" in err


@pytest.mark.parametrize("argv", [
    ["reproduce", "--n", "1", "--format", "json"],
    ["reproduce", "--n", "2", "--format", "json", "--no-full-scan", "--trials", "1000"],
    ["check", "--group", "sym:4", "--subgroup", "(12)(34),(13)(24)", "--cross-validate", "--format", "json"],
    ["check", "--group", "agl:1", "--hq", "--cross-validate"],
    ["enumerate", "--group", "dihedral:8"],
    ["graph-check", "--group", "cyclic:10", "--s", "1,9", "--c", "0,5", "--t", "2", "--format", "json"],
])
def test_determinism(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
