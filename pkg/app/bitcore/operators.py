"""Quaternionic operators, partial concatenation, interpolants and cyclic shifts.

Operators read the 4N non-NULL symbols of a string in position order as the quarters
A || B || C || D and write the result back into the same positions. NULLs never move,
wherever a cyclic shift has left them.
"""
from typing import Literal, Sequence

import numpy as np

from app.bitcore.bitstring import BitString, EnsembleParams, as_symbols
from app.exceptions import DomainError, ShapeError, UnsupportedSymbolError


Quaternion = Literal["i1", "i2", "i3"]


def assemble(A: Sequence[int], B: Sequence[int], C: Sequence[int], D: Sequence[int]) -> BitString:
    """A || B || C || D as a NULL-free string of length 4N."""
    quarters = [as_symbols(q) for q in (A, B, C, D)]
    lengths = {q.size for q in quarters}
    if len(lengths) != 1:
        raise ShapeError(f"quarters must have equal length, got {sorted(lengths)}")
    N = lengths.pop()
    if N < 1:
        raise ShapeError("quarters must be non-empty")
    if any((q == 0).any() for q in quarters):
        raise UnsupportedSymbolError("NULL symbols are appended, never inside a quarter")
    return BitString.from_symbols(np.concatenate(quarters), EnsembleParams(N=N))


def _quarter_view(s: BitString) -> np.ndarray:
    return s.structured().reshape(4, s.N)


def _i1_rows(Q: np.ndarray) -> np.ndarray:
    return np.stack([Q[1], -Q[0], -Q[3], Q[2]])


def _quaternion_rows(which: Quaternion, Q: np.ndarray) -> np.ndarray:
    A, B, C, D = Q
    if which == "i1":
        return np.stack([B, -A, -D, C])
    if which == "i2":
        return np.stack([C, D, -A, -B])
    if which == "i3":
        return np.stack([D, -C, B, -A])
    raise DomainError(f"unknown quaternion operator: {which}")


def quaternion_apply(which: Quaternion, s: BitString) -> BitString:
    """i1: B||-A||-D||C, i2: C||D||-A||-B, i3: D||-C||B||-A.

    Applied directly, i1(i2(s)) = i3(s) and i2(i1(s)) = -i3(s).
    """
    rows = _quaternion_rows(which, _quarter_view(s))
    return s.with_structured(rows.ravel())


def partial_concat(B: Sequence[int], C: Sequence[int], m: int) -> np.ndarray:
    """First N - m elements of B followed by the last m elements of C."""
    b, c = as_symbols(B), as_symbols(C)
    if b.size != c.size:
        raise ShapeError(f"quarters must have equal length, got {b.size} and {c.size}")
    N = b.size
    if not 0 <= m <= N:
        raise DomainError(f"m must lie in [0, {N}], got {m}")
    return np.concatenate([b[: N - m], c[N - m :]])


def _check_m(s: BitString, m: int):
    if not 0 <= m <= 2 * s.N:
        raise DomainError(f"m must lie in [0, 2N] = [0, {2 * s.N}], got {m}")


def interp_i1(s: BitString, m: int) -> BitString:
    """Interpolate from s (m = 0) through i1(s) (m = N) to -s (m = 2N).

    Slot j is (A_j, B_j, C_j, D_j). For m <= N the last m slots take the i1 action;
    for m = N + k the first N - k slots take i1 and the last k are negated.
    """
    _check_m(s, m)
    N = s.N
    Q = _quarter_view(s)
    rotated = _i1_rows(Q)
    if m <= N:
        out = Q.copy()
        out[:, N - m :] = rotated[:, N - m :]
    else:
        k = m - N
        out = rotated
        out[:, N - k :] = -Q[:, N - k :]
    return s.with_structured(out.ravel())


def interp_i1_inverse(s: BitString, m: int) -> BitString:
    """Exact inverse of interp_i1(., m): i1 slots take -i1, negated slots stay negated."""
    _check_m(s, m)
    N = s.N
    Q = _quarter_view(s)
    unrotated = -_i1_rows(Q)
    if m <= N:
        out = Q.copy()
        out[:, N - m :] = unrotated[:, N - m :]
    else:
        k = m - N
        out = unrotated
        out[:, N - k :] = -Q[:, N - k :]
    return s.with_structured(out.ravel())


def cyc_shift(s: BitString, n: int) -> BitString:
    """Move the symbol at position j to j + n (mod length), NULLs included."""
    shift = n % s.length
    if shift == 0:
        return s
    return BitString.from_symbols(np.roll(s.symbols(), shift), s.params)
