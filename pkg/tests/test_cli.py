import json

import pytest

from torus_models.cli import EXIT_CONSTRUCTION_ERROR, EXIT_LAW_FAILURE, EXIT_OK, main


def test_build_summary(capsys):
    assert main(["build"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "instance rank1-standard" in out
    assert "closure added: nothing" in out
    assert "|Σ_c| = 2" in out


def test_build_json(capsys):
    assert main(["--json", "build", "--rank", "2"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["rank"] == 2


def test_check_passes(capsys):
    assert main(["check", "--suite", "posets", "--suite", "euler"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "posets on rank1-standard:" in out
    assert "FAIL" not in out


def test_check_mutated_fails(capsys):
    assert main(["check", "--mutate", "--suite", "euler"]) == EXIT_LAW_FAILURE
    assert "FAIL" in capsys.readouterr().out


def test_check_json_has_no_wall_times(capsys):
    assert main(["--json", "check", "--suite", "posets"]) == EXIT_OK
    (report,) = json.loads(capsys.readouterr().out)
    assert report["suite"] == "posets"
    assert all("wall_time" not in law for law in report["laws"])


def test_export_dot_to_file(tmp_path):
    out = tmp_path / "sigma_a.dot"
    assert main(["export", "poset-dot", "--poset", "sigma_c", "-o", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith('digraph "sigma_c"')


def test_bad_window_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--window", "40..-20", "build"])
    assert info.value.code == 2
    assert "window" in capsys.readouterr().err


def test_invalid_settings(capsys):
    assert main(["--denominator-bound", "-1", "build"]) == EXIT_CONSTRUCTION_ERROR
    assert "invalid settings" in capsys.readouterr().err


def test_unknown_subgroup_is_reported(capsys):
    code = main(["export", "diagram-json", "--module", "torsion", "--at", "C5"])
    assert code == EXIT_CONSTRUCTION_ERROR
    assert "C5" in capsys.readouterr().err
