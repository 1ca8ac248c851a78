"""Derivation of independent per-row seeds from one master seed."""
from typing import List


MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> int:
    """One splitmix64 output for the given 64-bit state."""
    z = (state + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seeds(master: int, count: int) -> List[int]:
    """Seed i is splitmix64(master + i * gamma), truncated to 63 bits."""
    return [
        splitmix64((master + i * GOLDEN_GAMMA) & MASK64) >> 1 for i in range(count)
    ]
