from enum import IntEnum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime

from app.bitcore.kernels import pack, popcount, unpack, word_count
from app.exceptions import DomainError, ShapeError, UnsupportedSymbolError


class Bit(IntEnum):
    """Outcome symbol of one ensemble member"""

    PLUS = 1
    MINUS = -1
    NULL = 0

    @property
    def char(self) -> str:
        return {Bit.PLUS: "+", Bit.MINUS: "-", Bit.NULL: "x"}[self]

    @classmethod
    def from_char(cls, char: str) -> "Bit":
        try:
            return {"+": cls.PLUS, "-": cls.MINUS, "x": cls.NULL, "X": cls.NULL}[char]
        except KeyError:
            raise UnsupportedSymbolError(f"Unknown bit symbol: {char!r}")


class EnsembleParams(BaseModel):
    """Quarter length N, null count n_X and the derived modulus p = 4N + n_X."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Quarter length")
    n_X: int = Field(0, ge=0, description="Number of null symbols")
    require_prime: bool = Field(False, description="p must be prime")
    pythagorean: bool = Field(False, description="p must be a prime with p = 1 mod 4")

    @property
    def p(self) -> int:
        return 4 * self.N + self.n_X

    @property
    def length(self) -> int:
        return self.p

    @model_validator(mode="after")
    def check_modulus(self) -> "EnsembleParams":
        if (self.require_prime or self.pythagorean) and not isprime(self.p):
            raise DomainError(f"p = 4N + n_X = {self.p} is not prime")
        if self.pythagorean and self.p % 4 != 1:
            raise DomainError(f"p = {self.p} is not a Pythagorean prime (p % 4 != 1)")
        return self

    def same_shape(self, other: "EnsembleParams") -> bool:
        return self.N == other.N and self.n_X == other.n_X


class BitString(BaseModel):
    """Immutable ensemble of symbolic world-states, held as two packed bit planes.

    A set bit in `values` marks a MINUS symbol, a set bit in `nulls` marks a NULL.
    Padding bits past `params.length` are zero in both planes.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: EnsembleParams
    values: np.ndarray
    nulls: np.ndarray

    @model_validator(mode="after")
    def check_planes(self) -> "BitString":
        words = word_count(self.params.length)
        if self.values.shape != (words,) or self.nulls.shape != (words,):
            raise ShapeError(
                f"bit planes need {words} words for length {self.params.length}"
            )
        if popcount(self.values & self.nulls):
            raise ShapeError("a position cannot be both MINUS and NULL")
        if popcount(self.nulls) != self.params.n_X:
            raise UnsupportedSymbolError(
                f"string holds {popcount(self.nulls)} NULL symbols, params declare n_X={self.params.n_X}"
            )
        tail = self.params.length % 64
        if tail and ((self.values[-1] | self.nulls[-1]) >> np.uint64(tail)):
            raise ShapeError("padding bits must be zero")
        self.values.flags.writeable = False
        self.nulls.flags.writeable = False
        return self

    @classmethod
    def from_symbols(
        cls, symbols: Iterable[int], params: Optional[EnsembleParams] = None
    ) -> "BitString":
        """Build a string from +1/-1/0 symbols; params are inferred from the counts if omitted."""
        arr = np.asarray(list(symbols) if not isinstance(symbols, np.ndarray) else symbols)
        arr = arr.astype(np.int8).ravel()
        if not np.isin(arr, (-1, 0, 1)).all():
            raise UnsupportedSymbolError("symbols must be +1, -1 or 0 (NULL)")
        if params is None:
            params = infer_params(arr.size, int(np.count_nonzero(arr == 0)))
        elif arr.size != params.length:
            raise ShapeError(
                f"length {arr.size} does not match 4N + n_X = {params.length}"
            )
        return cls(params=params, values=pack(arr == -1), nulls=pack(arr == 0))

    @classmethod
    def unit(cls, params: EnsembleParams) -> "BitString":
        """The all-PLUS string of 4N symbols followed by n_X NULLs."""
        symbols = np.ones(params.length, dtype=np.int8)
        symbols[4 * params.N :] = 0
        return cls.from_symbols(symbols, params)

    @property
    def length(self) -> int:
        return self.params.length

    @property
    def N(self) -> int:
        return self.params.N

    def symbols(self) -> np.ndarray:
        """Symbols as an int8 array of +1, -1 and 0."""
        minus = unpack(self.values, self.length)
        null = unpack(self.nulls, self.length)
        out = np.ones(self.length, dtype=np.int8)
        out[minus] = -1
        out[null] = 0
        return out

    def to_list(self) -> List[int]:
        return self.symbols().tolist()

    def count(self, bit: Bit) -> int:
        if bit is Bit.MINUS:
            return popcount(self.values)
        if bit is Bit.NULL:
            return self.params.n_X
        return self.length - popcount(self.values) - self.params.n_X

    def structured(self) -> np.ndarray:
        """The 4N structured symbols, read off the non-NULL positions in order."""
        sym = self.symbols()
        return sym[sym != 0]

    def quarters(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        q = self.structured().reshape(4, self.N)
        return q[0], q[1], q[2], q[3]

    def with_structured(self, structured: np.ndarray) -> "BitString":
        """Write 4N symbols back into the non-NULL positions; NULLs keep their places."""
        structured = np.asarray(structured, dtype=np.int8).ravel()
        if structured.size != 4 * self.N:
            raise ShapeError(
                f"expected {4 * self.N} structured symbols, got {structured.size}"
            )
        if (structured == 0).any():
            raise UnsupportedSymbolError("NULL symbols cannot replace structured symbols")
        sym = self.symbols()
        sym[sym != 0] = structured
        return BitString.from_symbols(sym, self.params)

    def __neg__(self) -> "BitString":
        return BitString.from_symbols(-self.symbols(), self.params)

    def __len__(self) -> int:
        return self.length

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return (
            self.params.same_shape(other.params)
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.nulls, other.nulls)
        )

    def __hash__(self):
        return hash(
            (self.params.N, self.params.n_X, self.values.tobytes(), self.nulls.tobytes())
        )

    def __str__(self):
        return "".join(Bit(int(s)).char for s in self.symbols())

    def __repr__(self):
        text = str(self) if self.length <= 64 else f"{str(self)[:61]}..."
        return f"BitString(N={self.N}, n_X={self.params.n_X}, {text})"


def infer_params(length: int, nulls: int) -> EnsembleParams:
    structured = length - nulls
    if structured <= 0 or structured % 4:
        raise ShapeError(
            f"{structured} non-null symbols cannot be split into four equal quarters"
        )
    return EnsembleParams(N=structured // 4, n_X=nulls)


def concat(*strings: BitString) -> BitString:
    """Position-for-position concatenation; the result has N = structured / 4 and n_X = total NULLs."""
    if not strings:
        raise ShapeError("nothing to concatenate")
    return BitString.from_symbols(np.concatenate([s.symbols() for s in strings]))


def as_symbols(quarter: Sequence[int]) -> np.ndarray:
    return np.asarray(quarter, dtype=np.int8)
