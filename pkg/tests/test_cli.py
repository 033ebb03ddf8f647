from __future__ import annotations

import json
import subprocess
import sys

from qlrc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_and_verify_roundtrip(capsys, tmp_path):
    path = tmp_path / "a.json"
    code, out, err = run(capsys, "construct", "--family", "A", "--q", "2", "--lambda", "3",
                         "--u", "1", "--out", str(path))
    assert code == 0 and err == ""
    obj = json.loads(path.read_text())
    assert obj["record"]["n"] == 15 and obj["record"]["k"] == 3 and obj["record"]["d"] == 3
    assert obj["record"]["optimal"] is True
    assert obj["code"]["k"] == 9 and obj["certificate"]["classical_defect"] == 0
    code, out, err = run(capsys, "verify", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["quantum_defect"] == 0 and report["pure"] is True


def test_verify_detects_tampering(capsys, tmp_path):
    path = tmp_path / "a.json"
    run(capsys, "construct", "--family", "B", "--q", "5", "--lambda", "6", "--v", "1",
        "--out", str(path))
    obj = json.loads(path.read_text())
    obj["code"]["d"] = 3
    obj["record"]["k"] = 13
    path.write_text(json.dumps(obj))
    code, out, err = run(capsys, "verify", str(path))
    assert code == 1
    assert json.loads(err)["error"] == "VerificationMismatch"


def test_deterministic_output(capsys):
    argv = ["construct", "--family", "cartA", "--q", "2", "--lambda", "3", "--u", "1",
            "--axes", "2"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    assert json.loads(a)["record"]["n"] == 30


def test_emit_formats(capsys):
    code, out, _ = run(capsys, "construct", "--family", "A", "--q", "2", "--lambda", "3",
                       "--u", "1", "--emit", "matrix")
    assert code == 0 and out.splitlines()[0] == "9 15 4"
    code, out, _ = run(capsys, "construct", "--family", "A", "--q", "2", "--lambda", "3",
                       "--u", "1", "--emit", "csv")
    assert out.splitlines()[1] == "A,2,4,3,1,15,3,3,3,3,0,0,True,verified"


def test_invalid_input_exit_2(capsys):
    code, out, err = run(capsys, "construct", "--family", "A", "--q", "3", "--u", "1")
    assert code == 2
    assert json.loads(err) == {"error": "OddQ", "message": "family A requires even q"}
    code, _, err = run(capsys, "nonsense")
    assert code == 2 and json.loads(err)["error"] == "InvalidInput"
    code, _, err = run(capsys)
    assert code == 2
    code, _, err = run(capsys, "verify", "/nonexistent.json")
    assert code == 2


def test_mismatch_exit_1(capsys):
    code, out, err = run(capsys, "construct", "--family", "C2", "--q", "3", "--lambda", "2",
                         "--v", "3")
    assert code == 1
    assert json.loads(err)["mismatches"] == ["hermitian dual-containment fails"]
    assert json.loads(out)["record"] is None


def test_cosets(capsys):
    code, out, _ = run(capsys, "cosets", "--N", "15", "--z", "2", "--set", "1,2,4,8")
    obj = json.loads(out)
    assert code == 0 and obj["representatives"] == [0, 1, 3, 5, 7] and obj["complete"]
    code, _, err = run(capsys, "cosets", "--N", "15", "--z", "3")
    assert code == 2 and json.loads(err)["error"] == "BaseNotCoprime"


def test_table_q2(capsys):
    code, out, _ = run(capsys, "table", "--q", "2", "--max-length", "30", "--emit", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("row,family,q,s,lambda")
    assert any(line.startswith("A,A,2,4,3,1,,15,3,3,3,3,0,0,True,verified") for line in lines)


def test_search_optimal_only(capsys):
    code, out, _ = run(capsys, "search", "--q", "2", "--max-length", "20", "--optimal-only")
    recs = json.loads(out)
    assert code == 0 and recs and all(r["optimal"] for r in recs)
    assert [r["n"] for r in recs] == sorted(r["n"] for r in recs if r["family"] == "A") + \
        [r["n"] for r in recs if r["family"] != "A"]


def test_search_parallel_matches_serial(capsys):
    serial = run(capsys, "search", "--q", "3", "--max-length", "16", "--emit", "csv")
    parallel = run(capsys, "search", "--q", "3", "--max-length", "16", "--emit", "csv",
                   "--jobs", "2")
    assert serial[1] == parallel[1]
    assert serial[0] == parallel[0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qlrc", "cosets", "--N", "5", "--z", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["representatives"] == [0, 1, 2]
