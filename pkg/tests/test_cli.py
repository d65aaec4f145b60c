import hashlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

from homogeneity.cli import main, run_model
from homogeneity.model import ModelError, load_model, load_model_text

FIXTURES = Path(__file__).parent / "fixtures"
ALL = sorted(FIXTURES.glob("*.json"))
EXPECTED_EXIT = {
    "bullet_admissible.json": 0,
    "bullet_inadmissible.json": 1,
    "complex_nice.json": 0,
    "complex_violations.json": 1,
    "degree3_blocks.json": 1,
    "homogenize_real.json": 0,
    "m2_velocities.json": 0,
    "super_fixtures.json": 1,
    "t2_right.json": 0,
    "t2star_left.json": 0,
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(tmp_path, capsys, path, *extra):
    side = tmp_path / "report.json"
    code, _, _ = run(capsys, "run", str(path), "--machine-output", str(side), *extra)
    return code, json.loads(side.read_text())


def by_task(recs):
    return {r["task"]: r for r in recs}


def test_every_fixture_is_covered():
    assert sorted(p.name for p in ALL) == sorted(EXPECTED_EXIT)


@pytest.mark.parametrize("path", ALL, ids=lambda p: p.stem)
def test_exit_codes(path, capsys):
    code, out, _ = run(capsys, "run", str(path))
    assert code == EXPECTED_EXIT[path.name]
    assert out.rstrip().endswith("tasks ok")


@pytest.mark.parametrize("path", ALL, ids=lambda p: p.stem)
def test_parallel_matches_sequential(path, capsys):
    _, seq, _ = run(capsys, "run", str(path))
    _, par, _ = run(capsys, "run", str(path), "--parallel")
    assert seq == par


def test_t2_report(tmp_path, capsys):
    code, recs = records(tmp_path, capsys, FIXTURES / "t2_right.json")
    assert code == 0
    assert [r["status"] for r in recs] == ["ok", "ok", "ok"]
    weights = recs[1]["artifacts"]
    assert weights["X"] == "x_d1*d/dx_d2"
    assert weights["[delta,X]"] == "-x_d1*d/dx_d2"
    assert recs[2]["artifacts"]["class"] == "extendable"


def test_blocked_witness(tmp_path, capsys):
    code, recs = records(tmp_path, capsys, FIXTURES / "degree3_blocks.json")
    assert code == 1
    pushed = by_task(recs)["classify-pushed"]
    assert pushed["status"] == "violation"
    assert (pushed["location"], pushed["witness"]) == ("y1", "a^-1*b")
    assert by_task(recs)["classify-flat"]["status"] == "ok"


def test_homogenize_report(tmp_path, capsys):
    _, recs = records(tmp_path, capsys, FIXTURES / "homogenize_real.json")
    coords = by_task(recs)
    hom = [r for r in recs if r["command"] == "homogenize"][0]
    assert hom["artifacts"]["coordinates"] == {"u": "u", "v": "-u + v"}
    assert all(r["status"] == "ok" for r in coords.values())


def test_super_report(tmp_path, capsys):
    _, recs = records(tmp_path, capsys, FIXTURES / "super_fixtures.json")
    tasks = by_task(recs)
    assert tasks["shifted-homogenize"]["artifacts"]["coordinates"]["y"] == "-th1*th2 + y"
    assert tasks["odd-shift-homogenize"]["artifacts"]["coordinates"]["xi"] == "-th1*th3*th4 + xi"
    assert tasks["lift-morphism"]["status"] == "ok"
    assert tasks["cross-term-action"]["status"] == "violation"
    assert tasks["alpha-body"]["status"] == "violation"


def test_complex_reports(tmp_path, capsys):
    _, recs = records(tmp_path, capsys, FIXTURES / "complex_violations.json")
    tasks = by_task(recs)
    assert tasks["doubled-family"]["status"] == "violation"
    assert tasks["mixed-holomorphic"]["witness"] == "1/2*conj(x)*xi*y2"
    assert tasks["modulus-nice"]["witness"] == "2*y"
    assert tasks["twist-nice"]["witness"] == "(1 + zeta6)*z"
    _, recs = records(tmp_path, capsys, FIXTURES / "complex_nice.json")
    proj = [r for r in recs if r["command"] == "fourier-project"][0]
    assert proj["artifacts"]["projection"] == "1/2*y1 + 1/2*y2"


def test_determinism_across_runs(tmp_path, capsys):
    digests = set()
    for k in range(3):
        blob = b""
        for path in ALL:
            side = tmp_path / f"{path.stem}-{k}.json"
            _, out, _ = run(capsys, "run", str(path), "--machine-output", str(side))
            blob += out.encode() + side.read_bytes()
        digests.add(hashlib.sha256(blob).hexdigest())
    assert len(digests) == 1


def test_task_filter(tmp_path, capsys):
    code, recs = records(tmp_path, capsys, FIXTURES / "t2_right.json", "--task", "weights")
    assert code == 0 and [r["command"] for r in recs] == ["weights"]
    code, recs = records(tmp_path, capsys, FIXTURES / "degree3_blocks.json",
                         "--task", "classify-flat")
    assert code == 0 and len(recs) == 1


def test_unknown_task_filter(capsys):
    code, _, err = run(capsys, "run", str(FIXTURES / "t2_right.json"), "--task", "nope")
    assert code == 2 and "nope" in err


def test_empty_task_list(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"mode": "real", "variables": [], "items": {}, "tasks": []}))
    code, out, _ = run(capsys, "run", str(path))
    assert code == 0 and out.strip() == "0/0 tasks ok"


def test_parse_error_has_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "variables": [{"name": "y", "weight": 1}],\n'
                    '  "items": {"h": {"type": "action", "components": {"y": "t**y"}}}\n}\n')
    code, _, err = run(capsys, "run", str(path))
    assert code == 2
    assert "line 3" in err and "column" in err


def test_bad_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"mode": "real",\n "tasks": [}\n')
    code, _, err = run(capsys, "run", str(path))
    assert code == 2 and "line 2" in err


def test_unknown_command_and_variable():
    with pytest.raises(ModelError):
        load_model_text(json.dumps({"tasks": [{"command": "plot"}]}))
    with pytest.raises(ModelError) as info:
        load_model_text(json.dumps({
            "variables": [{"name": "y", "weight": 1}],
            "items": {"h": {"type": "action", "components": {"z": "t*z"}}}}))
    assert "z" in str(info.value)


def test_missing_file(capsys):
    code, _, err = run(capsys, "run", "/nonexistent/model.json")
    assert code == 2 and "cannot read" in err


def test_alias_maps_to_weights():
    model = load_model(FIXTURES / "t2_right.json")
    assert [t.command for t in model.tasks] == ["verify-action", "weights", "g2-classify"]


@pytest.mark.parametrize("path", ALL, ids=lambda p: p.stem)
def test_derived_expressions_round_trip(path):
    model = load_model(path)
    for rec in run_model(model, None, False):
        coords = (rec.get("artifacts") or {}).get("coordinates")
        if not isinstance(coords, dict):
            continue
        for text in coords.values():
            assert str(model.parse(text)) == text


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homogeneity.cli", "run",
                           str(FIXTURES / "t2_right.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "3/3 tasks ok" in proc.stdout
