import sys
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

from loguru import logger as _logger

from app.config import PROJECT_ROOT, config


LOG_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[run]} | "
    "{name}:{function}:{line} - {message}"
)

_print_level = "WARNING"


def log_path(directory: Union[str, Path], name: str, when: Optional[datetime] = None) -> Path:
    """`<directory>/<name>_YYYYMMDD.log`; relative directories hang off the project root."""
    directory = Path(directory)
    if not directory.is_absolute():
        directory = PROJECT_ROOT / directory
    stamp = (when or datetime.now()).strftime("%Y%m%d")
    return directory / f"{name}_{stamp}.log"


def define_log_level(
    print_level: str = "WARNING",
    logfile_level: str = "DEBUG",
    name: Optional[str] = "bithilbert",
    directory: Union[str, Path] = "logs",
):
    """Route logs to stderr and, when `name` is set, to a dated file under `directory`.

    stdout is reserved for experiment records.
    """
    global _print_level
    _print_level = print_level

    _logger.remove()
    _logger.configure(extra={"run": name or "bithilbert"})
    _logger.add(sys.stderr, level=print_level, format=LOG_FORMAT)
    if name:
        _logger.add(log_path(directory, name), level=logfile_level, format=LOG_FORMAT)
    return _logger


logger = define_log_level(
    config.logging.print_level,
    config.logging.logfile_level,
    config.logging.logfile,
    config.logging.directory,
)
