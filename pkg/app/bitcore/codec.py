"""Text and binary serialization of bit strings.

Text form is run-length encoded, e.g. "3+2-x" for (+1, +1, +1, -1, -1, X).
Binary form is an 8-byte little-endian header (magic b"BS", N as uint32, n_X as uint16)
followed by the value-plane words and then the null-plane words.
"""
import re
import struct
from itertools import groupby
from pathlib import Path
from typing import Union

import numpy as np

from app.bitcore.bitstring import Bit, BitString, EnsembleParams
from app.bitcore.kernels import word_count
from app.exceptions import CodecError


MAGIC = b"BS"
HEADER = struct.Struct("<2sIH")
_RUN = re.compile(r"(\d*)([+\-xX])")


def to_text(s: BitString) -> str:
    parts = []
    for symbol, run in groupby(s.symbols().tolist()):
        count = sum(1 for _ in run)
        char = Bit(symbol).char
        parts.append(char if count == 1 else f"{count}{char}")
    return "".join(parts)


def from_text(text: str) -> BitString:
    text = "".join(text.split())
    symbols = []
    pos = 0
    for match in _RUN.finditer(text):
        if match.start() != pos:
            raise CodecError(f"unexpected character at offset {pos} in {text!r}")
        count = int(match.group(1)) if match.group(1) else 1
        symbols.extend([int(Bit.from_char(match.group(2)))] * count)
        pos = match.end()
    if pos != len(text) or not symbols:
        raise CodecError(f"malformed run-length text: {text!r}")
    return BitString.from_symbols(symbols)


def to_bytes(s: BitString) -> bytes:
    if s.N >= 2**32 or s.params.n_X >= 2**16:
        raise CodecError("N or n_X too large for the binary header")
    header = HEADER.pack(MAGIC, s.N, s.params.n_X)
    return (
        header
        + s.values.astype("<u8").tobytes()
        + s.nulls.astype("<u8").tobytes()
    )


def from_bytes(data: bytes) -> BitString:
    if len(data) < HEADER.size:
        raise CodecError("truncated header")
    magic, N, n_X = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CodecError(f"bad magic {magic!r}")
    params = EnsembleParams(N=N, n_X=n_X)
    words = word_count(params.length)
    expected = HEADER.size + 16 * words
    if len(data) != expected:
        raise CodecError(f"expected {expected} bytes, got {len(data)}")
    body = np.frombuffer(data, dtype="<u8", offset=HEADER.size).astype(np.uint64)
    return BitString(params=params, values=body[:words].copy(), nulls=body[words:].copy())


def save(s: BitString, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_bytes(to_bytes(s))
    return path


def load(path: Union[str, Path]) -> BitString:
    return from_bytes(Path(path).read_bytes())
