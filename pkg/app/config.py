import os
import threading
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, ValidationError

from app.exceptions import ConfigError


def get_project_root() -> Path:
    """Get the project root directory"""
    return Path(__file__).resolve().parent.parent


PROJECT_ROOT = get_project_root()
OUTPUT_DIR_ENV = "BITHILBERT_OUTPUT_DIR"


class EnsembleSettings(BaseModel):
    N: int = Field(100, ge=1, description="Quarter length of a single-qubit string")
    n_X: int = Field(0, ge=0, description="Number of appended null symbols")
    seed: int = Field(0, ge=0, description="Default master seed")
    require_prime: bool = Field(False, description="Require p = 4N + n_X to be prime")


class CensusSettings(BaseModel):
    max_candidates: int = Field(
        10_000, ge=1, description="Cap on enumerated candidates per disk"
    )
    pool_max_denominator: int = Field(
        16, ge=5, description="Largest vertex-angle denominator in the sampling pool"
    )
    epsilon: str = Field("1/100", description="Default disk half-width in turns")


class PAdicSettings(BaseModel):
    require_prime: bool = Field(False, description="Reject composite p-adic bases")
    pythagorean: bool = Field(False, description="Require p prime with p = 1 mod 4")


class OutputSettings(BaseModel):
    directory: Optional[Path] = Field(None, description="Default output directory")
    format: Literal["json", "csv", "text"] = Field("json", description="Record format")


class LoggingSettings(BaseModel):
    print_level: str = Field("WARNING", description="Level of the stderr sink")
    logfile_level: str = Field("DEBUG", description="Level of the log file sink")
    logfile: Optional[str] = Field(
        "bithilbert", description="Log file name prefix; empty or None disables the file sink"
    )
    directory: Path = Field(Path("logs"), description="Log directory, relative to the project root")


class AppConfig(BaseModel):
    ensemble: EnsembleSettings = Field(default_factory=EnsembleSettings)
    census: CensusSettings = Field(default_factory=CensusSettings)
    padic: PAdicSettings = Field(default_factory=PAdicSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


class Config:
    _instance = None
    _lock = threading.Lock()
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            with self._lock:
                if not self._initialized:
                    self._config = None
                    self._load_initial_config()
                    self._initialized = True

    @staticmethod
    def _get_config_path() -> Optional[Path]:
        root = PROJECT_ROOT
        config_path = root / "config" / "config.toml"
        if config_path.exists():
            return config_path
        example_path = root / "config" / "config.example.toml"
        if example_path.exists():
            return example_path
        return None

    def _load_config(self) -> dict:
        config_path = self._get_config_path()
        if config_path is None:
            return {}
        with config_path.open("rb") as f:
            return tomllib.load(f)

    def _load_initial_config(self):
        raw_config = self._load_config()
        try:
            self._config = AppConfig(**raw_config)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration: {e}") from e

        # Environment overrides the file for the output directory
        if env_dir := os.environ.get(OUTPUT_DIR_ENV):
            self._config.output.directory = Path(env_dir)

    @property
    def ensemble(self) -> EnsembleSettings:
        return self._config.ensemble

    @property
    def census(self) -> CensusSettings:
        return self._config.census

    @property
    def padic(self) -> PAdicSettings:
        return self._config.padic

    @property
    def output(self) -> OutputSettings:
        return self._config.output

    @property
    def logging(self) -> LoggingSettings:
        return self._config.logging


config = Config()
