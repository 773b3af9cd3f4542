import pytest
from pydantic import ValidationError

from hermitinv.config import CHECK_NAMES, ENV_FILE, RunConfig, load_env, load_run_config, resolve_config
from hermitinv.report import REPORTS_ENV


def test_defaults():
    config = RunConfig()
    assert config.q == 2
    assert config.checks == list(CHECK_NAMES)
    assert config.samples.points == 1000
    assert config.budgets.sylvester_budget == 10 ** 4
    assert config.ambient_degree(4) == 8


def test_validation():
    with pytest.raises(ValidationError):
        RunConfig(p=4)
    with pytest.raises(ValidationError):
        RunConfig(p=2, h=1, m=7)
    with pytest.raises(ValidationError):
        RunConfig(checks=["count_points", "bogus"])
    with pytest.raises(ValidationError):
        RunConfig(seed=2 ** 64)
    assert RunConfig(p=3, h=1, m=8).ambient_degree(4) == 8


def test_yaml_file_and_flags(tmp_path):
    path = tmp_path / "run.yml"
    path.write_text("p: 3\nseed: 5\nsamples:\n  points: 50\n  elements: 7\n", encoding="utf-8")
    file_config = load_run_config(path)
    assert file_config.q == 3
    merged = resolve_config(file_config, {"seed": 9, "m": None, "samples": {"points": None, "elements": 3}})
    assert merged.p == 3
    assert merged.seed == 9
    assert merged.samples.points == 50
    assert merged.samples.elements == 3


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_run_config(tmp_path / "absent.yml")


def test_empty_file_gives_defaults(tmp_path):
    path = tmp_path / "empty.yml"
    path.write_text("", encoding="utf-8")
    assert load_run_config(path) == RunConfig()


def test_env_file_sets_reports_dir(tmp_path, monkeypatch):
    monkeypatch.delenv(REPORTS_ENV, raising=False)
    (tmp_path / ENV_FILE).write_text(f"{REPORTS_ENV}={tmp_path / 'envreports'}\n", encoding="utf-8")
    load_env(tmp_path / "run.yml")
    assert RunConfig().reports_dir() == tmp_path / "envreports"
    assert RunConfig(output_dir=str(tmp_path / "cli")).reports_dir() == tmp_path / "cli"
