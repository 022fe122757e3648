import json
import subprocess
import sys

import pytest

from qsl2.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--r", "3")
    assert code == 0
    assert json.loads(out) == {"r": 3, "all": [27, 108, 162, 108, 27],
                               "closed": [1, 30, 84, 82, 27], "exact": [0, 26, 78, 78, 26]}


@pytest.mark.parametrize("argv", [["dims", "--r", "4"], ["dims", "--r", "1"], ["frobnicate"],
                                  ["dims", "--r", "7"], ["verify", "--suite", "nope"],
                                  ["verify", "--r", "3", "--suite", "table-r5"],
                                  ["export-operator", "--op", "d", "--degree", "4"],
                                  ["maxwell-solve", "--source", "e_ab"]])
def test_invalid_config_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "--r", "3")
    assert code == 0 and json.loads(out)["dims"] == [1, 4, 6, 4, 1]
    code, out, _ = run(capsys, "cohomology", "--r", "3", "--degree", "0")
    obj = json.loads(out)
    assert obj["dim"] == 1 and obj["canonical_basis"][0]["terms"] == [["1", "1", ["1/1", "0/1"]]]


def test_maxwell_report(capsys):
    code, out, _ = run(capsys, "maxwell-report", "--r", "3")
    obj = json.loads(out)
    assert code == 0
    assert [row["dim"] for row in obj["zero_modes"]] == [28, 20, 20, 7, 16, 4, 8, 8, 13]
    assert [row["raw"] for row in obj["zero_modes"]] == [54, 32, 32, 19, 42, 30, 20, 20, 13]


def test_maxwell_solve_named_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "maxwell-solve", "--r", "3", "--source", "ecb2")
    assert code == 0 and json.loads(out)["residual-check"] is True
    src = json.loads(out)["J"]
    f = tmp_path / "j.json"
    f.write_text(json.dumps(src))
    code, out2, _ = run(capsys, "maxwell-solve", "--r", "3", "--source", str(f))
    assert code == 0 and json.loads(out2)["J"] == src
    f.write_text("e_z")
    assert run(capsys, "maxwell-solve", "--r", "3", "--source", str(f), "--gauge", "temporal")[0] == 0


def test_maxwell_solve_no_solution(capsys):
    code, out, _ = run(capsys, "maxwell-solve", "--r", "3", "--source", "e_b b")
    assert code == 1 and json.loads(out)["error"] == "NoSolution"
    code, out, _ = run(capsys, "maxwell-solve", "--r", "3", "--source", "theta", "--gauge", "temporal")
    assert code == 1 and json.loads(out)["error"] == "GaugeInfeasible"


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--r", "3", "--suite", "spin0")
    assert code == 0 and json.loads(out)["summary"] == {"spin0": True}


def test_verify_failure_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--r", "3", "--suite", "named-modes")
    assert code == 1 and json.loads(out)["pass"] is False


def test_export_operator(capsys, tmp_path):
    target = tmp_path / "d1.json"
    code, _, _ = run(capsys, "export-operator", "--r", "3", "--op", "d", "--degree", "1",
                     "--out", str(target))
    obj = json.loads(target.read_text())
    assert code == 0 and (obj["rows"], obj["cols"]) == (162, 108)
    assert obj["entries"] == sorted(obj["entries"])
    code, out, _ = run(capsys, "export-operator", "--r", "3", "--op", "star")
    assert code == 0 and json.loads(out)["tables"][1]["deg"] == 1


def test_table_renderer(capsys):
    code, out, _ = run(capsys, "dims", "--r", "3", "--table")
    assert code == 0 and "closed" in out and "84" in out


def test_cache_round_trip(capsys, tmp_path):
    code, out1, _ = run(capsys, "dims", "--r", "3", "--cache-dir", str(tmp_path))
    files = sorted(p.name for p in (tmp_path / "r3-v0.1.0").iterdir())
    assert files == ["d0.json", "d1.json", "d2.json", "d3.json", "manifest.json"]
    code, out2, _ = run(capsys, "dims", "--r", "3", "--cache-dir", str(tmp_path))
    assert out1 == out2


def test_output_is_deterministic_across_processes():
    cmd = [sys.executable, "-m", "qsl2", "hodge-check", "--r", "3"]
    outs = {subprocess.run(cmd, capture_output=True, env={"PYTHONHASHSEED": s}, check=True).stdout
            for s in ("0", "1", "2")}
    assert len(outs) == 1
