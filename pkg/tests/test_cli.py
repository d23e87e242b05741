import json
import subprocess
import sys

import pytest

from mackey_kit.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_marks_c2(capsys):
    code, data = run(["marks", "--group", "C2"], capsys)
    assert code == 0
    assert data == [[2, 1], [0, 1]]


def test_group_summary(capsys):
    code, data = run(["group", "--group", "A5"], capsys)
    assert code == 0
    assert data["order"] == 60
    assert [c["label"] for c in data["subgroup_classes"]] == \
        ["e", "C2", "C3", "V4", "C5", "S3", "D5", "A4", "A5"]


def test_verify_bredon(capsys):
    code, data = run(["verify", "eq9"], capsys)
    assert code == 0 and data["pass"]


def test_verify_acyclic(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, data = run(["verify", "acyclic", "--complex", "M", "--subgroup", "all-proper",
                      "--out", str(out)], capsys)
    assert code == 0
    assert json.loads(out.read_text()) == data


def test_cat_build(capsys, tmp_path):
    out = tmp_path / "cat.json"
    code, data = run(["cat", "build", "--group", "S3", "--family", "proper", "--kind", "mackey",
                      "--out", str(out)], capsys)
    assert code == 0 and out.exists()
    assert data["family"] == "proper"


def test_complex_commands(capsys, tmp_path):
    code, data = run(["complex", "homology", "--complex", "M"], capsys)
    assert code == 0 and data["reduced"] == [[0, []], [0, []], [0, []]]
    code, data = run(["complex", "fixed", "--complex", "L", "--subgroup", "A5"], capsys)
    assert code == 0 and data["empty"]
    path = tmp_path / "L.json"
    code, data = run(["complex", "subdivide", "--complex", "M", "--out", str(path)], capsys)
    assert code == 0 and data["vertices"] == 21
    code, data = run(["complex", "homology", "--complex", str(path)], capsys)
    assert code == 0 and data["counts"] == [21, 80, 60]


def test_usage_errors(capsys):
    assert main(["marks", "--group", "nope"]) == 2
    assert main(["complex", "fixed", "--complex", "L"]) == 2
    assert main(["complex", "fixed", "--complex", "L", "--subgroup", "Q8"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--bogus"])
    assert exc.value.code == 2


def test_failed_check_exits_one(capsys):
    # the full family leaves L with an empty top fixed set
    code = main(["stable-model", "--complex", "L", "--family", "all"])
    assert code == 1


def test_stable_model(capsys):
    code, data = run(["stable-model", "--complex", "L", "--m", "2"], capsys)
    assert code == 0
    assert data["details"]["verdict"] == "projective"


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "mackey_kit.cli", "--version"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip()
