from datetime import datetime

import pytest

from app.config import PROJECT_ROOT, config
from app.logger import define_log_level, log_path


@pytest.fixture
def restore_logger():
    yield
    settings = config.logging
    define_log_level(settings.print_level, settings.logfile_level, settings.logfile, settings.directory)


def test_log_path_layout():
    when = datetime(2024, 1, 2)
    assert log_path("logs", "bithilbert", when) == PROJECT_ROOT / "logs" / "bithilbert_20240102.log"
    assert log_path("/var/tmp/runs", "census", when).as_posix() == "/var/tmp/runs/census_20240102.log"


def test_file_sink_in_configured_directory(tmp_path, restore_logger):
    log = define_log_level("ERROR", "DEBUG", "census", tmp_path / "runs")
    log.debug("census started")
    log.remove()
    text = log_path(tmp_path / "runs", "census").read_text()
    assert "census started" in text
    assert "| DEBUG    | census |" in text


@pytest.mark.parametrize("name", [None, ""])
def test_no_name_disables_file_sink(tmp_path, restore_logger, name):
    log = define_log_level("ERROR", "DEBUG", name, tmp_path)
    log.info("stderr only")
    log.remove()
    assert list(tmp_path.iterdir()) == []


def test_default_settings():
    assert config.logging.logfile == "bithilbert"
    assert config.logging.directory.as_posix() == "logs"
