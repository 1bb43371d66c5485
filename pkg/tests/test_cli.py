import json
import shutil

import pytest

from momentforge import reports
from momentforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_fan_check_bundled(capsys):
    code, _, _ = run(capsys, "fan", "check", "p2.fan.json", "--expect", "smooth,complete,projective,rank=1")
    assert code == 0
    code, rep = run_json(capsys, "fan", "check", "fp_ex2.fan.json", "--expect", "smooth,complete,nonprojective,rank=5")
    assert code == 0
    v = rep["verdicts"]
    assert (v["smooth"], v["complete"], v["projective"]) == (True, True, False)
    assert v["class_group"] == {"rank": 5, "torsion": []}


def test_fan_check_expectation_mismatch_exits_one(capsys):
    code, rep = run_json(capsys, "fan", "check", "fp_ex2.fan.json", "--expect", "projective")
    assert code == 1
    assert rep["verdicts"]["projective"] is False


def test_missing_input_exits_two(capsys):
    code, _, err = run(capsys, "fan", "check", "missing.json")
    assert code == 2 and "missing" in err


def test_bad_fan_names_offender(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"dim": 2, "rays": [[2, 4], [0, 1]], "max_cones": [[0, 1]]}))
    code, _, err = run(capsys, "fan", "check", str(p))
    assert code == 2 and "non-primitive-ray" in err and "ray 0" in err


def test_cox_commands(capsys):
    code, rep = run_json(capsys, "cox", "chamber", "fp_ex2.fan.json")
    assert code == 0 and rep["verdicts"]["chamber"] == "empty"
    code, rep = run_json(capsys, "cox", "free", "p2.fan.json")
    assert code == 0 and rep["verdicts"]["free"] is True
    code, rep = run_json(capsys, "cox", "fiber", "--weights", "[[1,1]]", "--target", "[2]")
    assert code == 0 and rep["verdicts"]["fiber"] == "compact"
    code, rep = run_json(capsys, "cox", "weights", "fp_ex2.fan.json")
    assert code == 0 and len(rep["verdicts"]["weights"]) == 5


def test_level_is_converted_to_target(capsys):
    code, rep = run_json(capsys, "cox", "fiber", "--weights", "[[1,-1]]", "--level", "[0]")
    assert code == 0 and rep["verdicts"]["fiber"] == "noncompact"
    code, rep = run_json(capsys, "cox", "semistable", "--weights", "[[1,1,1]]", "--level", '["-2"]', "--support", "[0]")
    assert code == 0
    v = rep["verdicts"]
    assert v["semistable"] is True and v["target"] == ["1"] and v["level"] == ["-2"]


def test_forms_commands(capsys):
    code, rep = run_json(capsys, "forms", "wrong-matrix", "--at", "1,0", "--c", "3")
    assert code == 0
    assert rep["verdicts"]["matrix"] == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]]
    code, rep = run_json(capsys, "forms", "scan", "--potential", "wrong-o1", "--c", "100", "--seed", "7")
    assert code == 0 and rep["verdicts"]["verdict"] == "counterexample"
    code, rep = run_json(
        capsys, "forms", "hamiltonian", "--potential", "fs-affine", "--weights", "[[1]]", "--samples", "100", "--seed", "7"
    )
    assert code == 0 and rep["verdicts"]["residual"] < 1e-6


def test_origin_is_a_domain_error(capsys):
    code, _, err = run(capsys, "forms", "wrong-matrix", "--at", "0,0", "--c", "1")
    assert code == 2 and "origin-excluded" in err


def test_all_failing_grid_is_an_input_error(capsys):
    code, _, err = run(capsys, "forms", "min-c", "--grid", "1/4,1/2", "--samples", "500")
    assert code == 2 and "no-c-on-grid" in err


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "cox", "fiber", "--weights", "[[1,1]]", "--target", "[1,2]")[0] == 2
    assert run(capsys, "cox", "fiber", "--weights", "not json", "--target", "[1]")[0] == 2


def test_reports_are_byte_identical(capsys):
    argv = ("forms", "scan", "--potential", "fixed-o1", "--c", "4", "--seed", "3", "--samples", "2000", "--json")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    assert "timings" not in json.loads(a)


def test_timings_stay_outside_the_digest(capsys):
    argv = ("cox", "chamber", "p1p1p1.fan.json", "--json")
    plain = json.loads(run(capsys, *argv)[1])
    timed = json.loads(run(capsys, *argv, "--timings")[1])
    assert plain["report_digest"] == timed["report_digest"]


def test_text_output_is_rendered_from_json(capsys):
    code, out, _ = run(capsys, "cox", "free", "p2.fan.json")
    assert code == 0 and "free = true" in out


def test_accept_forms_is_deterministic(capsys):
    a = run(capsys, "accept", "forms", "--seed", "42", "--json")
    b = run(capsys, "accept", "forms", "--seed", "42", "--json")
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["verdicts"]["passed"] is True


def test_corrupted_dataset_fails_fast(tmp_path, monkeypatch, capsys):
    data = tmp_path / "data"
    shutil.copytree(reports.data_dir(), data)
    target = data / "fp_ex2.fan.json"
    target.write_text(target.read_text().replace('"dim"', ' "dim"', 1))
    monkeypatch.setenv(reports.DATA_ENV, str(data))
    code, _, err = run(capsys, "accept", "fans", "--seed", "42")
    assert code == 2 and "digest-mismatch" in err
    assert run(capsys, "fan", "check", "fp_ex2.fan.json")[0] == 2


def test_manifest_pins_every_dataset():
    pinned = reports.manifest()
    for name, digest in pinned.items():
        assert reports.sha256_bytes((reports.data_dir() / name).read_bytes()) == digest
    files = {p.name for p in reports.data_dir().glob("*.json")} - {"manifest.json"}
    assert files == set(pinned)


def test_datasets_carry_provenance():
    for name in reports.manifest():
        doc = json.loads((reports.data_dir() / name).read_text())
        assert doc.get("provenance")
