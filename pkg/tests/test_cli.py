"""Command line interface: exit codes, report shapes, determinism."""

import json

import pytest

from dgfree.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_check_crisscross_preset(capsys):
    code, report = run(capsys, "check-crisscross", "a1")
    assert code == 0
    assert report["pass"] is True
    assert report["crisscross"] and report["d_squared_zero"]


def test_check_crisscross_violated_tuple(tmp_path, capsys):
    obj = {"field": {"kind": "rational"}, "generators": 2,
           "matrices": [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]}
    path = tmp_path / "bad_tuple.json"
    path.write_text(json.dumps(obj))
    code, report = run(capsys, "check-crisscross", str(path))
    assert code == 1
    assert report["pass"] is False
    assert report["witness"]["i"] == 1 and report["witness"]["j"] == 2


def test_check_crisscross_unknown_source(capsys):
    code, report = run(capsys, "check-crisscross", "nope.json")
    assert code == 2
    assert "error" in report


def test_cohomology_with_preset_presentation(capsys):
    code, report = run(capsys, "cohomology", "a1", "--max-degree", "4",
                       "--verify-presentation", "preset")
    assert code == 0
    assert [row["dim"] for row in report["degrees"]] == [1] * 5
    assert report["presentation_pass"] is True


def test_cohomology_max_degree_out_of_range(capsys):
    code, report = run(capsys, "cohomology", "a1", "--max-degree", "12")
    assert code == 2
    assert "max_degree" in report["error"]


def test_cohomology_missing_file(capsys):
    code, report = run(capsys, "cohomology", "missing.json")
    assert code == 2


def test_resolution_ok(capsys):
    code, report = run(capsys, "resolution", "--module", "f1")
    assert code == 0
    assert report["certificate"]["ok"] is True
    assert report["minimal"] is True
    assert report["maurer_cartan"] is True
    assert report["algebra"] == "a1"
    assert report["certificate"]["homology_dims"] == [1, 0, 0, 0, 0, 0, 0]


def test_resolution_algebra_module_mismatch(capsys):
    code, report = run(capsys, "resolution", "a1", "--module", "f2")
    assert code == 2
    assert "error" in report


def test_resolution_maurer_cartan_failure(tmp_path, capsys):
    obj = {"algebra": "a1", "rank": 3, "labels": ["1", "u", "v"],
           "connection": [["0", "0", "0"], ["x2", "0", "0"], ["x1", "x3", "0"]]}
    path = tmp_path / "bad_module.json"
    path.write_text(json.dumps(obj))
    code, report = run(capsys, "resolution", "--module", str(path))
    assert code == 1
    assert report["certificate"]["failed"] == "maurer_cartan"
    assert report["witness"]["i"] == 2 and report["witness"]["j"] == 1
    assert report["witness"]["defect"] == "x2*x2"


def test_resolution_malformed_json(tmp_path, capsys):
    path = tmp_path / "garbage.json"
    path.write_text("{oops")
    code, report = run(capsys, "resolution", "--module", str(path))
    assert code == 2


def test_ext_report_with_aut(capsys):
    code, report = run(capsys, "ext", "--module", "f1", "--aut")
    assert code == 0
    assert report["pass"] is True
    assert report["ext_dim"] == 3
    assert report["recognized"] == "k[X]/(X^3)"
    aut = report["aut"]
    assert aut["dim"] == 3
    assert aut["family_verified"] is True
    assert aut["closure_verified"] is True
    assert aut["brute_force"]["p"] == 5
    assert aut["brute_force"]["count"] == 20
    assert aut["brute_force"]["matches_family"] is True
    assert all(aut["brute_force"]["group_axioms"].values())


def test_ext_f2(capsys):
    code, report = run(capsys, "ext", "--module", "f2")
    assert code == 0
    assert report["recognized"] == "k[X]/(X^4)"
    assert report["frobenius"]["symmetric"] is True
    assert "aut" not in report


def test_ext_rejects_composite_prime(capsys):
    code, report = run(capsys, "ext", "--module", "f1", "--aut", "--prime", "6")
    assert code == 2


def test_dpic_compare(capsys):
    code, report = run(capsys, "dpic-compare", "--prime", "5")
    assert code == 0
    assert report["verdict"] == "DPic(A1) != DPic(A2)"
    assert report["isomorphic"] is False
    assert report["census"] == {
        "p": 5, "g1": 2, "g2": 4,
        "scope": report["census"]["scope"],
    }


def test_dpic_compare_bad_prime(capsys):
    code, report = run(capsys, "dpic-compare", "--prime", "4")
    assert code == 2


def test_negative_seed_rejected(capsys):
    code, report = run(capsys, "dpic-compare", "--seed", "-1")
    assert code == 2


def test_output_flag_writes_file_and_not_stdout(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["check-crisscross", "a2", "--output", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["pass"] is True


def test_reports_are_byte_identical_across_runs(tmp_path):
    first = tmp_path / "one.json"
    second = tmp_path / "two.json"
    argv = ["ext", "--module", "f1", "--aut", "--seed", "0"]
    assert main(argv + ["--output", str(first)]) == 0
    assert main(argv + ["--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_unknown_command_exits_with_argparse_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
