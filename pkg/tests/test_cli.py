import json
import subprocess
import sys

import pytest

from pathcordial.cli import main
from pathcordial.constructors import hardcoded_labeling
from pathcordial.textio import format_labeling


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", "--group", "2x4", "--labels", "00-12-10-01-02-03-11-13")
    assert code == 0 and ": cordial" in out
    code, out, _ = run(capsys, "check", "--group", "2x2", "--labels", "00-01-10-11")
    assert code == 1 and "not cordial" in out
    code, _, err = run(capsys, "check", "--group", "3", "--labels", "0-X")
    assert code == 2 and "X" in err


def test_check_json_parity(capsys):
    code, out, _ = run(capsys, "--json", "check", "--group", "2x2", "--labels", "00-01-10-11")
    data = json.loads(out)
    assert code == 1 and data["cordial"] is False
    assert data["edge_partition"]["partition"] == [2, 1, 0, 0]


def test_check_file_and_stdin(capsys, tmp_path, monkeypatch):
    f = tmp_path / "fig2.txt"
    f.write_text(format_labeling(hardcoded_labeling("fig2")), encoding="utf-8")
    assert run(capsys, "check", "--file", str(f))[0] == 0
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("group=3;kind=cycle\n0-1-2\n"))
    assert run(capsys, "check", "--file", "-")[0] == 0
    assert run(capsys, "check", "--file", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "check", "--group", "3")[0] == 2


@pytest.mark.parametrize(
    "argv,code",
    [
        (["construct", "--group", "3x3", "--length", "9"], 0),
        (["construct", "--group", "2x2x2", "--length", "8"], 1),
        (["construct", "--group", "2x2", "--length", "5"], 1),
        (["construct", "--group", "2x4", "--length", "16", "--kind", "path"], 0),
        (["construct", "--group", "5", "--length", "5", "--kind", "cycle"], 0),
        (["construct", "--group", "2x0", "--length", "5"], 2),
        (["construct", "--group", "3", "--length", "2", "--kind", "cycle"], 2),
    ],
)
def test_construct_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_construct_double_path_output(capsys):
    _, out, _ = run(capsys, "construct", "--group", "2x4", "--length", "16")
    assert "10-00-01-11-12-12-03-03-10-00-01-11-02-02-13-13" in out


@pytest.mark.parametrize(
    "spec,m,kind",
    [("3x3", 9, "path"), ("2x6", 25, "path"), ("2x2x2", 40, "path"), ("15", 40, "path"),
     ("3x3", 9, "cycle"), ("2x2", 13, "path")],
)
def test_construct_check_round_trip(capsys, tmp_path, spec, m, kind):
    code, out, _ = run(capsys, "construct", "--group", spec, "--length", str(m), "--kind", kind)
    assert code == 0
    f = tmp_path / "lab.txt"
    f.write_text(out, encoding="utf-8")
    assert run(capsys, "check", "--file", str(f))[0] == 0
    code, out, _ = run(capsys, "--json", "construct", "--group", spec, "--length", str(m), "--kind", kind)
    f.write_text(json.loads(out)["labeling"], encoding="utf-8")
    assert run(capsys, "check", "--file", str(f))[0] == 0


@pytest.mark.parametrize(
    "argv,code",
    [
        (["search", "--group", "2x2", "--length", "5"], 1),
        (["search", "--group", "5", "--length", "5", "--canonical"], 0),
        (["search", "--group", "2x2x2", "--length", "9"], 1),
        (["search", "--group", "2x2x2", "--length", "9", "--node-budget", "50"], 3),
        (["search", "--group", "3", "--length", "3", "--kind", "cycle"], 0),
        (["search", "--group", "3", "--length", "2", "--kind", "cycle"], 2),
    ],
)
def test_search_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_search_canonical_is_stable(capsys):
    a = run(capsys, "--json", "search", "--group", "5", "--length", "5", "--canonical")[1]
    b = run(capsys, "search", "--group", "5", "--length", "5", "--canonical", "--json")[1]
    assert json.loads(a)["witness"] == json.loads(b)["witness"]


def test_count_examples(capsys):
    assert run(capsys, "count", "--group", "2", "--kind", "path", "--length", "3")[1].strip() == "4"
    assert run(capsys, "count", "--group", "2x2", "--kind", "path", "--length", "4")[1].strip() == "0"
    code, out, _ = run(capsys, "count", "--group", "3", "--kind", "cycle", "--length", "3")
    assert code == 0 and int(out) > 0
    code, _, _ = run(capsys, "--oracle-bound", "10", "count", "--group", "3", "--length", "5")
    assert code == 3


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("PATHCORDIAL_ORACLE_BOUND", "10")
    assert run(capsys, "count", "--group", "3", "--length", "5")[0] == 3
    monkeypatch.setenv("PATHCORDIAL_ORACLE_BOUND", "ten")
    assert run(capsys, "count", "--group", "3", "--length", "5")[0] == 2
    monkeypatch.delenv("PATHCORDIAL_ORACLE_BOUND")
    monkeypatch.setenv("PATHCORDIAL_JSON", "1")
    assert json.loads(run(capsys, "count", "--group", "2", "--length", "3")[1])["count"] == 4


def test_sweep_text_and_json(capsys):
    code, out, _ = run(capsys, "sweep", "--max-order", "8")
    assert code == 0
    row = [l for l in out.splitlines() if l.startswith("2x2x2 ")][0]
    assert "exhausted" in row and "PASS" in row
    code, out, _ = run(capsys, "sweep", "--max-order", "4", "--json")
    data = json.loads(out)
    assert code == 0 and {r["group"] for r in data} == {"2", "3", "4", "2x2"}
    # same records either way
    text = run(capsys, "sweep", "--max-order", "4")[1]
    for r in data:
        assert any(l.split()[0] == r["group"] and r["status"] in l for l in text.splitlines()[2:])


def test_exp2_and_table(capsys):
    code, out, _ = run(capsys, "exp2", "--m", "2")
    assert code == 0 and "24 permutations" in out
    code, out, _ = run(capsys, "--seed", "3", "exp2", "--m", "4", "--trials", "1000", "--json")
    assert code == 0 and json.loads(out)["passed"]
    assert run(capsys, "exp2", "--m", "1")[0] == 2
    code, out, _ = run(capsys, "table")
    assert code == 0 and "fig2" in out


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "search", "--group", "2")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pathcordial", "check", "--group", "3", "--kind", "cycle", "--labels", "0-1-2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "cordial" in proc.stdout
