import json
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.bitcore.bitstring import Bit, BitString, EnsembleParams
from app.bitcore.operators import cyc_shift, interp_i1, interp_i1_inverse
from app.exceptions import DomainError


Step = Tuple[int, int]


class UnitaryProgram(BaseModel):
    """Ordered (m, n) steps, each applying interp_i1(., m) then cyc_shift(., n)."""

    model_config = ConfigDict(frozen=True)

    steps: List[Step] = Field(default_factory=list)

    def __add__(self, other: Union["UnitaryProgram", Step]) -> "UnitaryProgram":
        if isinstance(other, UnitaryProgram):
            return UnitaryProgram(steps=self.steps + other.steps)
        if isinstance(other, tuple):
            return UnitaryProgram(steps=self.steps + [other])
        raise TypeError(
            f"unsupported operand type(s) for +: '{type(self).__name__}' and '{type(other).__name__}'"
        )

    def __len__(self) -> int:
        return len(self.steps)

    def check_range(self, params: EnsembleParams):
        for t, (m, n) in enumerate(self.steps):
            if not 0 <= m <= 2 * params.N:
                raise DomainError(f"step {t}: m={m} outside [0, {2 * params.N}]")
            if not 0 <= n < params.p:
                raise DomainError(f"step {t}: n={n} outside [0, {params.p})")

    def to_json(self) -> str:
        return json.dumps([list(step) for step in self.steps])

    @classmethod
    def from_json(cls, text: str) -> "UnitaryProgram":
        return cls(steps=[tuple(step) for step in json.loads(text)])


def evolve(program: UnitaryProgram, start: BitString) -> BitString:
    program.check_range(start.params)
    s = start
    for m, n in program.steps:
        s = cyc_shift(interp_i1(s, m), n)
    return s


def invert(program: UnitaryProgram, end: BitString) -> BitString:
    """Undo the steps in reverse order: shift back by n, then the exact interp inverse."""
    program.check_range(end.params)
    s = end
    for m, n in reversed(program.steps):
        s = interp_i1_inverse(cyc_shift(s, -n), m)
    return s


def is_unitary_image(s: BitString) -> Optional[Step]:
    """(m, n) with s = cyc_shift(interp_i1(1, m), n) and the smallest such n, or None.

    Images at parameter m hold exactly 2m MINUS symbols, which fixes m before the shift scan.
    """
    minus = s.count(Bit.MINUS)
    if minus % 2 or minus // 2 > 2 * s.N:
        return None
    m = minus // 2
    image = interp_i1(BitString.unit(s.params), m).symbols()
    target = s.symbols()
    for n in range(s.length):
        if np.array_equal(np.roll(image, n), target):
            return m, n
    return None


def enumerate_unitary_images(params: EnsembleParams) -> Dict[BitString, Step]:
    """Every distinct unitary image of the unit string, keyed to its first (m, n)."""
    unit = BitString.unit(params)
    images: Dict[BitString, Step] = {}
    for m in range(2 * params.N + 1):
        base = interp_i1(unit, m)
        for n in range(params.length):
            images.setdefault(cyc_shift(base, n), (m, n))
    return images
