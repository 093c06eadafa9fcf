import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from torsemi import io
from torsemi.cli import main, run
from torsemi.qsubring import QSubringDescriptor

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"
UPDATE = os.environ.get("TORSEMI_UPDATE_GOLDEN") == "1"

CASES = {
    "saturate_diag2": ["saturate", "data/diag2.monoid"],
    "saturate_wedge_closure": ["saturate", "data/wedge.monoid", "--closure"],
    "decompose_wedge": ["decompose", "data/wedge.monoid"],
    "classify_point": ["classify", "data/wedge.monoid", "--point", "2,1"],
    "classify_count": ["classify", "data/wedge.monoid", "--height", "6"],
    "kmin_wedge": ["kmin", "data/wedge.monoid", "--alpha", "2,1", "--gamma", "0,7"],
    "shift_wedge": ["shift", "data/wedge.monoid", "--alpha", "2,1", "--poly", "1*x^(0,7)"],
    "quotient_three_eight": ["quotient", "data/three_eight.json"],
    "quotient_free": ["quotient", "data/free.json"],
    "profile_t2": ["profile", "data/t2.json"],
    "grothendieck_z4": ["grothendieck", "data/z4.json"],
    "qsub_five_halves": ["qsub", "5/2", "--height", "64"],
    "qsub_two_three": ["qsub", "1/2", "1/3"],
    "verify_qsubring": ["verify", "--suite", "qsubring", "--seed", "3", "--height", "128"],
}
EXPECTED_EXIT = {"quotient_free": 2}


@pytest.fixture(autouse=True)
def _in_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def _strip(report):
    return {k: v for k, v in report.items() if k != "timing"}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, report = run(CASES[name])
    assert code == EXPECTED_EXIT.get(name, 0)
    assert set(report) == {"command", "status", "payload", "timing"}
    path = GOLDEN / f"{name}.json"
    doc = json.loads(json.dumps(_strip(report), sort_keys=True))
    if UPDATE:
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    assert doc == json.loads(path.read_text())


@pytest.mark.parametrize("name", ["decompose_wedge", "quotient_three_eight", "verify_qsubring"])
def test_deterministic(name):
    a = json.dumps(_strip(run(CASES[name])[1]), sort_keys=True)
    b = json.dumps(_strip(run(CASES[name])[1]), sort_keys=True)
    assert a == b


def test_spec_examples():
    assert run(CASES["saturate_diag2"])[1]["payload"]["hilbert_basis"] == [[1, 1]]
    assert len(run(CASES["decompose_wedge"])[1]["payload"]["pieces"]) == 4
    assert run(CASES["kmin_wedge"])[1]["payload"]["k"] == 3


def test_round_trip_saturate(tmp_path):
    out = tmp_path / "basis.monoid"
    run(["saturate", "data/wedge.monoid", "--out", str(out)])
    m = io.read_monoid(out)
    assert set(m.generators) == {(1, 0), (1, 1), (1, 2)}
    assert io.monoid_text(m) == out.read_text()


def test_round_trip_decompose(tmp_path):
    out = tmp_path / "d.json"
    _, report = run(["decompose", "data/wedge.monoid", "--out", str(out)])
    assert json.loads(out.read_text()) == report["payload"]


def test_round_trip_quotient(tmp_path):
    out = tmp_path / "s.json"
    _, report = run(["quotient", "data/three_eight.json", "--out", str(out)])
    s = io.read_semiring(out)
    assert io.semiring_json(s) == report["payload"]["semiring"]
    code, prof = run(["profile", str(out)])
    assert code == 0 and prof["payload"]["order"] == 7


def test_round_trip_grothendieck(tmp_path):
    out = tmp_path / "g.json"
    run(["grothendieck", "data/z4.json", "--out", str(out)])
    assert io.read_semiring(out).order == 4


def test_round_trip_qsub(tmp_path):
    out = tmp_path / "q.json"
    run(["qsub", "5/2", "--out", str(out)])
    d = QSubringDescriptor.from_json(json.loads(out.read_text()))
    assert (d.n, d.primes.values) == (5, (2,))


def test_report_out_when_no_artifact(tmp_path):
    out = tmp_path / "r.json"
    _, report = run(["kmin", "data/wedge.monoid", "--alpha", "2,1", "--gamma", "0,7", "--out", str(out)])
    assert json.loads(out.read_text())["payload"] == report["payload"]


@pytest.mark.parametrize(
    "argv",
    [["bogus"], [], ["saturate", "missing.monoid"], ["qsub", "x/y"], ["qsub", "4", "6"], ["kmin", "data/wedge.monoid", "--alpha", "1"]],
)
def test_failures_exit_one(argv):
    code, report = run(argv)
    assert code == 1 and report["status"] == "failed"
    assert "error" in report["payload"]


def test_malformed_file_names_file_and_line(tmp_path):
    bad = tmp_path / "bad.monoid"
    bad.write_text("n 2\n1 0\n1 x\n")
    code, report = run(["saturate", str(bad)])
    assert code == 1
    assert report["payload"]["line"] == 3
    assert report["payload"]["error"].startswith(f"{bad}:3:")


def test_main_prints_one_json_document(capsys):
    assert main(CASES["kmin_wedge"]) == 0
    out, err = capsys.readouterr()
    assert json.loads(out)["payload"]["k"] == 3
    assert err.startswith("kmin: ok")


def test_console_script_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "torsemi.cli", "quotient", "data/free.json"], cwd=ROOT, capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["status"] == "undecided"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "decomposition", "--seed", "7", "--height", "15"],
        ["verify", "--suite", "diagram", "--max-order", "3"],
        ["verify", "--suite", "theorem5", "--count", "200", "--seed", "11"],
    ],
    ids=["decomposition", "diagram", "theorem5"],
)
def test_verify_examples(argv):
    code, report = run(argv)
    assert code == 0, report["payload"]
