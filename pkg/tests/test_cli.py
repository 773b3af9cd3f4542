import json

import pytest

from hermitinv.cli import COMMANDS, build_parser, main


def _run(tmp_path, *argv):
    return main([*argv, "--output", str(tmp_path), "--no-timestamp"])


def _doc(tmp_path, name):
    return json.loads((tmp_path / name).read_text(encoding="utf-8"))


def test_parser_knows_every_command():
    parser = build_parser()
    for command in list(COMMANDS) + ["all"]:
        args = parser.parse_args([command, "--q", "2"])
        assert args.command == command


def test_count_points(tmp_path):
    assert _run(tmp_path, "count-points", "--q", "2", "--k", "1") == 0
    doc = _doc(tmp_path, "count-points-q2-seed0.json")
    assert doc["pass"] is True
    assert doc["command"] == "count-points"
    assert doc["checks"][0]["observed"]["points"] == 9
    assert "timestamp" not in doc


def test_bad_ambient_degree_is_a_usage_error(tmp_path):
    assert _run(tmp_path, "verify-invariance", "--q", "2", "--m", "7") == 2
    assert not list(tmp_path.iterdir())


def test_bad_parameters_exit_two(tmp_path):
    assert _run(tmp_path, "field-info", "--q", "6") == 2
    assert _run(tmp_path, "group-order", "--q", "5") == 2
    assert _run(tmp_path, "count-points", "--config", str(tmp_path / "missing.yml")) == 2


def test_field_info_and_group_order(tmp_path):
    assert _run(tmp_path, "field-info", "--q", "3") == 0
    assert _doc(tmp_path, "field-info-q3-seed0.json")["field"]["modulus"] == [1, 0, 1]
    assert _run(tmp_path, "group-order", "--q", "3") == 0
    assert _doc(tmp_path, "group-order-q3-seed0.json")["checks"][0]["observed"]["order"] == 6048


def test_symbolic_command_runs_both_provers(tmp_path):
    assert _run(tmp_path, "verify-symbolic", "--q", "2") == 0
    checks = [c["check"] for c in _doc(tmp_path, "verify-symbolic-q2-seed0.json")["checks"]]
    assert checks == ["symbolic_dm_identity", "symbolic_dm_identity", "symbolic_consistency"]


def test_runs_are_reproducible(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    argv = ["verify-invariance", "--q", "2", "--points", "20", "--elements", "5", "--seed", "3"]
    assert _run(first, *argv) == 0
    assert _run(second, *argv, "--workers", "2") == 0
    name = "verify-invariance-q2-seed3.json"
    assert (first / name).read_bytes() == (second / name).read_bytes()


def test_all_with_config_file(tmp_path):
    config = tmp_path / "run.yml"
    config.write_text("p: 2\nh: 1\nchecks: [field_info, count_points, group_order]\n", encoding="utf-8")
    out = tmp_path / "out"
    assert _run(out, "all", "--config", str(config)) == 0
    doc = _doc(out, "all-q2-seed0.json")
    assert [c["check"] for c in doc["checks"]] == ["field_info", "count_points", "group_order"]
    assert doc["skipped"] == []


@pytest.mark.slow
def test_quotient_skips_plane_model_over_budget(tmp_path):
    assert _run(tmp_path, "quotient-eliminate", "--q", "3") == 0
    doc = _doc(tmp_path, "quotient-eliminate-q3-seed0.json")
    assert [c["check"] for c in doc["checks"]] == ["quotient_eliminate_x"]
    assert doc["skipped"][0]["check"] == "plane_model_soundness"
