"""Bit-plane kernels: packing symbol masks into little-endian uint64 words and counting set bits."""
import numpy as np


WORD_BITS = 64

_s55 = np.uint64(0x5555555555555555)
_s33 = np.uint64(0x3333333333333333)
_s0F = np.uint64(0x0F0F0F0F0F0F0F0F)
_s01 = np.uint64(0x0101010101010101)


def word_count(length: int) -> int:
    return (length + WORD_BITS - 1) // WORD_BITS


def pack(mask: np.ndarray) -> np.ndarray:
    """Pack a boolean mask into uint64 words, bit i of the mask at bit i % 64 of word i // 64.

    Padding bits beyond the mask length are zero.
    """
    mask = np.asarray(mask, dtype=bool)
    words = word_count(mask.size)
    packed = np.packbits(mask, bitorder="little")
    buf = np.zeros(words * 8, dtype=np.uint8)
    buf[: packed.size] = packed
    return buf.view("<u8").astype(np.uint64)


def unpack(words: np.ndarray, length: int) -> np.ndarray:
    """Inverse of pack: the first `length` bits as a boolean mask."""
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little", count=length).astype(bool)


def _swar_count(words: np.ndarray) -> np.ndarray:
    arr = words.astype(np.uint64, copy=True)
    arr = arr - ((arr >> np.uint64(1)) & _s55)
    arr = (arr & _s33) + ((arr >> np.uint64(2)) & _s33)
    arr += arr >> np.uint64(4)
    arr &= _s0F
    arr *= _s01
    arr >>= np.uint64(56)
    return arr


def popcount(words: np.ndarray) -> int:
    """Total number of set bits across all words."""
    if words.size == 0:
        return 0
    if hasattr(np, "bitwise_count"):
        return int(np.bitwise_count(words).sum(dtype=np.int64))
    return int(_swar_count(words).sum(dtype=np.int64))


def length_mask(length: int) -> np.ndarray:
    """Words with exactly the first `length` bits set."""
    words = np.full(word_count(length), np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    tail = length % WORD_BITS
    if tail:
        words[-1] = np.uint64((1 << tail) - 1)
    return words
