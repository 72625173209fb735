import json

import pytest

from adet.cli import run
from adet.report import VerificationReport


def test_matrix_prints_kronecker(capsys):
    assert run(["matrix", "--pair", "A1,T1"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "[2]"


def test_matrix_json_roundtrip(tmp_path, capsys):
    path = tmp_path / "m.json"
    assert run(["--json", str(path), "matrix", "--pair", "A1,T2"]) == 0
    capsys.readouterr()
    obj = json.loads(path.read_text())
    rep = VerificationReport.from_json_obj(obj)
    assert rep.passed
    assert rep.metadata["matrix"]["entries"] == [["2", "2"], ["2", "4"]]
    assert rep.to_json_obj() == obj


def test_global_flags_after_subcommand(tmp_path, capsys):
    # every subcommand accepts --json/--seed/... in trailing position too
    path = tmp_path / "t.json"
    assert run(["matrix", "--pair", "A1,T2", "--json", str(path)]) == 0
    assert json.loads(path.read_text())["metadata"]["matrix"]["entries"] == [["2", "2"], ["2", "4"]]
    assert run(["verify", "dilogsum", "--pair", "A1,T1", "--points", "2",
                "--seed", "3", "--precision-bits", "160"]) == 0
    capsys.readouterr()


def test_solve_all_json(tmp_path, capsys):
    path = tmp_path / "s.json"
    code = run(["--json", str(path), "solve", "--pair", "A1,T1", "--all", "--starts", "300"])
    capsys.readouterr()
    assert code == 0
    obj = json.loads(path.read_text())
    assert len(obj["metadata"]["solutions"]["solutions"]) == 2


def test_solve_positive(capsys):
    assert run(["solve", "--pair", "A1,T2"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_verify_torsion(capsys):
    assert run(["verify", "torsion", "--pair", "A1,T1", "--starts", "300"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out


def test_verify_periodicity_e6(capsys):
    assert run(["verify", "periodicity", "--pair", "E6,A1", "--seeds", "3"]) == 0
    out = capsys.readouterr().out
    assert "period=28" in out


def test_verify_wedge_and_dilogsum(capsys):
    assert run(["verify", "wedge", "--pair", "A2,A1", "--points", "2"]) == 0
    assert run(["verify", "dilogsum", "--pair", "A1,T1", "--points", "2"]) == 0
    capsys.readouterr()


def test_verify_fiveterm(capsys):
    assert run(["verify", "fiveterm", "--points", "40"]) == 0
    capsys.readouterr()


def test_verify_requires_pair(capsys):
    assert run(["verify", "wedge"]) == 2
    err = capsys.readouterr().err
    assert "requires --pair" in err


def test_qseries_commands(capsys):
    assert run(["qseries", "rr", "--N", "80"]) == 0
    assert run(["qseries", "ag", "--N", "50"]) == 0
    assert run(
        ["qseries", "custom", "--matrix", "[[2]]", "--b", "[0]", "--c=-1/60",
         "--residues", "1,4", "--modulus", "5", "--N", "60"]
    ) == 0
    capsys.readouterr()


def test_qseries_custom_bad_exponents(capsys):
    assert run(["qseries", "custom", "--matrix", "[[1]]", "--N", "10"]) == 1
    err = capsys.readouterr().err
    assert "not a nonnegative integer" in err


def test_report_aggregates(tmp_path, capsys):
    path = tmp_path / "r.json"
    code = run(
        ["--json", str(path), "report", "--pair", "A1,T1",
         "--starts", "300", "--points", "2", "--seeds", "2"]
    )
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(path.read_text())
    names = [r["name"] for r in obj["records"]]
    assert any("positive solution" in n for n in names)
    assert any("central-charge" in n for n in names)
    assert any("periodicity" in n for n in names)
    assert any("wedge" in n for n in names)
    assert any("five-term" in n for n in names)
    assert obj["metadata"]["central_charge"] == "2/5"
    assert "PASS" in out


def test_reports_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        assert run(
            ["--json", str(path), "--seed", "5", "verify", "dilogsum",
             "--pair", "A1,T1", "--points", "3"]
        ) == 0
    capsys.readouterr()
    a, b = (json.loads(p.read_text()) for p in paths)
    for obj in (a, b):
        obj.pop("wall_time_s")
    assert a == b


def test_bad_arguments_exit_2(capsys):
    assert run(["matrix"]) == 2
    assert run(["matrix", "--pair", "Q9,A1"]) == 2
    assert run(["nonsense"]) == 2
    capsys.readouterr()


def test_tol_scale_loosens_gates(capsys):
    # with a huge tolerance scale even impossible gates pass; sanity only
    assert run(["--tol-scale", "1e30", "verify", "fiveterm", "--points", "5"]) == 0
    capsys.readouterr()
