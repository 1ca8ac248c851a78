from pathlib import Path

import pytest

from app.config import OUTPUT_DIR_ENV, Config, config
from app.exceptions import ConfigError


@pytest.fixture
def reload_config(monkeypatch):
    yield config
    monkeypatch.undo()
    config._load_initial_config()


def test_singleton():
    assert Config() is config


def test_defaults():
    assert config.ensemble.N == 100
    assert config.ensemble.n_X == 0
    assert config.census.epsilon == "1/100"
    assert config.output.format == "json"


def test_invalid_file_raises_config_error(monkeypatch, reload_config):
    monkeypatch.setattr(Config, "_load_config", lambda self: {"ensemble": {"N": 0}})
    with pytest.raises(ConfigError):
        config._load_initial_config()


def test_output_directory_from_environment(monkeypatch, reload_config, tmp_path):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    config._load_initial_config()
    assert config.output.directory == Path(tmp_path)
