import math
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.exceptions import DomainError
from app.schema import Rational


# Exact cosine of a rational angle, keyed by the reduced denominator of its turns
NIVEN_COSINES = {
    1: Fraction(1),
    2: Fraction(-1),
    3: Fraction(-1, 2),
    4: Fraction(0),
    6: Fraction(1, 2),
}

# cos^2 is rational exactly when cos of the doubled angle is
RATIONAL_SQUARE_COSINES = {
    **{d: c * c for d, c in NIVEN_COSINES.items()},
    8: Fraction(1, 2),
    12: Fraction(3, 4),
}


class RationalAngle(BaseModel):
    """An angle 2*pi*turns with turns reduced into [0, 1)."""

    model_config = ConfigDict(frozen=True)

    turns: Rational = Field(..., description="Fraction of a full turn")

    @field_validator("turns")
    @classmethod
    def reduce_turns(cls, v: Fraction) -> Fraction:
        return v % 1

    @classmethod
    def of(cls, numerator: int, denominator: int) -> "RationalAngle":
        return cls(turns=Fraction(numerator, denominator))

    @property
    def denominator(self) -> int:
        return self.turns.denominator

    @property
    def radians(self) -> float:
        return 2 * math.pi * float(self.turns)

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(turns=self.turns + other.turns)

    def __sub__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(turns=self.turns - other.turns)

    def __str__(self):
        return f"{self.turns.numerator}/{self.turns.denominator} turn"


class RationalCosine(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: Rational

    @field_validator("value")
    @classmethod
    def check_range(cls, v: Fraction) -> Fraction:
        if not -1 <= v <= 1:
            raise DomainError(f"cosine {v} lies outside [-1, 1]")
        return v

    @property
    def sine_squared(self) -> Fraction:
        return 1 - self.value * self.value


def rational_sqrt(r: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None when it is irrational."""
    r = Fraction(r)
    if r < 0:
        return None
    num, den = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if num * num == r.numerator and den * den == r.denominator:
        return Fraction(num, den)
    return None


def cosine_sign(a: RationalAngle) -> int:
    t = a.turns
    if t in (Fraction(1, 4), Fraction(3, 4)):
        return 0
    return 1 if t < Fraction(1, 4) or t > Fraction(3, 4) else -1


def cosine_squared(a: RationalAngle) -> Optional[Fraction]:
    """Exact cos^2 of a rational angle when it is rational (reduced denominators 1, 2, 3, 4, 6, 8, 12)."""
    return RATIONAL_SQUARE_COSINES.get(a.denominator)


def distance_turns(a: Fraction, b: Fraction) -> Fraction:
    """Circular distance between two turn values, in [0, 1/2]."""
    d = (a - b) % 1
    return min(d, 1 - d)


def cosine_value(a: RationalAngle) -> Union[Fraction, float]:
    """Exact cosine when Niven allows it, a float otherwise."""
    exact = NIVEN_COSINES.get(a.denominator)
    return exact if exact is not None else math.cos(a.radians)
