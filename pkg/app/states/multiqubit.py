import json
from pathlib import Path
from typing import List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from app.bitcore import codec
from app.bitcore.bitstring import BitString, EnsembleParams, concat
from app.exceptions import ShapeError
from app.states.qubit import bloch_state
from app.states.skeleton import SkeletonPoint


class MultiQubitState(BaseModel):
    """K bit strings of length 2^(K+1) N built from a pre-order tree of (m, n) pairs.

    tree[0] parametrizes the repeated last row; the next 2^(K-1) - 1 pairs build the
    left (K-1)-state and the remaining pairs the right one. Rows are ordered top to bottom.
    """

    model_config = ConfigDict(frozen=True)

    K: int = Field(..., ge=1)
    params: EnsembleParams
    strings: List[BitString]
    tree: List[Tuple[int, int]]

    @model_validator(mode="after")
    def check_shape(self) -> "MultiQubitState":
        if len(self.tree) != 2**self.K - 1:
            raise ShapeError(f"K={self.K} needs {2**self.K - 1} tree pairs, got {len(self.tree)}")
        if len(self.strings) != self.K:
            raise ShapeError(f"K={self.K} needs {self.K} strings, got {len(self.strings)}")
        expected = 2 ** (self.K - 1) * self.params.length
        for s in self.strings:
            if s.length != expected:
                raise ShapeError(f"row length {s.length} != {expected}")
        return self

    @computed_field
    @property
    def degrees_of_freedom(self) -> int:
        return 2 * len(self.tree)

    @property
    def string_length(self) -> int:
        return self.strings[0].length

    def sidecar(self) -> dict:
        return {
            "K": self.K,
            "N": self.params.N,
            "n_X": self.params.n_X,
            "tree": [list(pair) for pair in self.tree],
        }

    def save(self, path: Union[str, Path]) -> Tuple[Path, Path]:
        """Write rows to `<path>.bits` and the parameter tree to `<path>.json`."""
        path = Path(path)
        bits_path, json_path = path.with_suffix(".bits"), path.with_suffix(".json")
        bits_path.write_bytes(b"".join(codec.to_bytes(s) for s in self.strings))
        json_path.write_text(json.dumps(self.sidecar(), sort_keys=True, indent=2))
        return bits_path, json_path

    @classmethod
    def load(cls, path: Union[str, Path]) -> "MultiQubitState":
        path = Path(path)
        meta = json.loads(path.with_suffix(".json").read_text())
        params = EnsembleParams(N=meta["N"], n_X=meta["n_X"])
        data = path.with_suffix(".bits").read_bytes()
        row_bytes = len(data) // meta["K"] if meta["K"] else 0
        if row_bytes * meta["K"] != len(data):
            raise ShapeError("bits file does not split into K equal rows")
        strings = [
            codec.from_bytes(data[i * row_bytes : (i + 1) * row_bytes])
            for i in range(meta["K"])
        ]
        return cls(
            K=meta["K"],
            params=params,
            strings=strings,
            tree=[tuple(pair) for pair in meta["tree"]],
        )


def _build_rows(K: int, tree: List[Tuple[int, int]], params: EnsembleParams) -> List[BitString]:
    m0, n0 = tree[0]
    root = bloch_state(SkeletonPoint(m=m0, n=n0, params=params))
    if K == 1:
        return [root]
    half = 2 ** (K - 1) - 1
    left = _build_rows(K - 1, tree[1 : 1 + half], params)
    right = _build_rows(K - 1, tree[1 + half :], params)
    rows = [concat(a, b) for a, b in zip(left, right)]
    rows.append(concat(*[root] * 2 ** (K - 1)))
    return rows


def kqubit_build(K: int, tree: List[Tuple[int, int]], params: EnsembleParams) -> MultiQubitState:
    if K < 1:
        raise ShapeError(f"K must be >= 1, got {K}")
    tree = [tuple(pair) for pair in tree]
    if len(tree) != 2**K - 1:
        raise ShapeError(f"K={K} needs {2**K - 1} tree pairs, got {len(tree)}")
    return MultiQubitState(K=K, params=params, strings=_build_rows(K, tree, params), tree=tree)
