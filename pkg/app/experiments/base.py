import csv
import io
import json
import time
from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.bitcore.bitstring import EnsembleParams
from app.config import config
from app.schema import format_fraction


def jsonable(value: Any) -> Any:
    """Reduce fractions, models, enums and numpy scalars to plain JSON values."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, float):
        return value if np.isfinite(value) else str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.generic):
        return jsonable(value.item())
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, BaseModel):
        dumped = value.model_dump(mode="json", exclude_none=True)
        return jsonable(dumped)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in value]
    return str(value)


def _flatten(prefix: str, value: Any, out: Dict[str, Any]):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        out[prefix] = json.dumps(value, sort_keys=True)
    else:
        out[prefix] = value


class ExperimentRecord(BaseModel):
    """Result of a harness run: config echo, seed, statistics and verdicts."""

    model_config = ConfigDict(frozen=True)

    experiment: str
    config: Dict[str, Any] = Field(default_factory=dict)
    seed: int = 0
    statistics: Dict[str, Any] = Field(default_factory=dict)
    verdicts: Dict[str, Any] = Field(default_factory=dict)
    headline: Optional[str] = Field(None, description="Statistic reported by sweeps")
    wall_time: Optional[float] = Field(default=None)
    error: Optional[str] = Field(default=None)

    @field_validator("config", "statistics", "verdicts", mode="before")
    @classmethod
    def make_jsonable(cls, v: Any) -> Any:
        return jsonable(v)

    def __bool__(self):
        return self.error is None

    def to_dict(self, timing: bool = False) -> dict:
        exclude = set() if timing else {"wall_time"}
        return self.model_dump(mode="json", exclude=exclude, exclude_none=True)

    def to_json(self, timing: bool = False) -> str:
        """Canonical JSON: sorted keys, wall time only on request."""
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"

    def flat_row(self, timing: bool = False) -> Dict[str, Any]:
        row: Dict[str, Any] = {"experiment": self.experiment, "seed": self.seed}
        _flatten("config", self.config, row)
        _flatten("statistics", self.statistics, row)
        _flatten("verdicts", self.verdicts, row)
        if self.error is not None:
            row["error"] = self.error
        if timing and self.wall_time is not None:
            row["wall_time"] = self.wall_time
        return row

    def to_csv(self, timing: bool = False) -> str:
        row = self.flat_row(timing)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        return buf.getvalue()

    def to_text(self, timing: bool = False) -> str:
        return "".join(f"{k}: {v}\n" for k, v in self.flat_row(timing).items())

    def render(self, fmt: str, timing: bool = False) -> str:
        renderers = {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}
        return renderers[fmt](timing)

    def headline_value(self) -> Any:
        if self.headline is None:
            return None
        return self.statistics.get(self.headline)

    def replace(self, **kwargs) -> "ExperimentRecord":
        """Returns a new record with the given fields replaced."""
        return type(self)(**{**self.model_dump(), **kwargs})


class ExperimentFailure(ExperimentRecord):
    """An ExperimentRecord that represents a failed run."""


class BaseExperiment(ABC, BaseModel):
    name: str
    description: str

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def __call__(self, **kwargs) -> ExperimentRecord:
        """Execute the experiment and stamp its wall time."""
        start = time.perf_counter()
        record = self.execute(**kwargs)
        return record.replace(wall_time=time.perf_counter() - start)

    @abstractmethod
    def execute(self, **kwargs) -> ExperimentRecord:
        """Execute the experiment with given parameters."""

    def record(self, seed: int = 0, **fields) -> ExperimentRecord:
        return ExperimentRecord(experiment=self.name, seed=seed, **fields)


def resolve_params(N: Optional[int] = None, n_X: Optional[int] = None) -> EnsembleParams:
    """Ensemble parameters from explicit values, falling back to configuration."""
    settings = config.ensemble
    return EnsembleParams(
        N=settings.N if N is None else N,
        n_X=settings.n_X if n_X is None else n_X,
        require_prime=settings.require_prime,
    )


def params_echo(params: EnsembleParams) -> Dict[str, int]:
    return {"N": params.N, "n_X": params.n_X, "p": params.p}
