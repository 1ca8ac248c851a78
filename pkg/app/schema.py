from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Optional

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, WithJsonSchema


def to_fraction(value: Any) -> Fraction:
    """Coerce ints, fractions and "n/d" or decimal strings to an exact Fraction.

    Floats go through their shortest repr so 0.1 becomes 1/10, not the binary expansion.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    raise ValueError(f"cannot interpret {type(value).__name__} as a rational")


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[
    Fraction,
    PlainValidator(to_fraction),
    PlainSerializer(format_fraction, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+/\d+$"}),
]


class VerdictStatus(str, Enum):
    """Outcome of an exact rationality decision"""

    RATIONAL = "RATIONAL"
    IRRATIONAL = "IRRATIONAL"
    EXCEPTION = "EXCEPTION"
    DEGENERATE = "DEGENERATE"


class Admissibility(str, Enum):
    """Outcome of a counterfactual admissibility check in a harness"""

    ADMISSIBLE = "ADMISSIBLE"
    INADMISSIBLE = "INADMISSIBLE"
    CONFLICT = "CONFLICT"
    EXCEPTION = "EXCEPTION"


class Verdict(BaseModel):
    """Tagged result of a rationality decision.

    RATIONAL carries its exact value; EXCEPTION names the Niven exception that fired and
    carries the exact value when one is known.
    """

    model_config = ConfigDict(frozen=True)

    status: VerdictStatus
    value: Optional[Rational] = Field(default=None)
    exception: Optional[str] = Field(default=None)
    reason: Optional[str] = Field(default=None)

    @classmethod
    def rational(cls, value: Fraction) -> "Verdict":
        return cls(status=VerdictStatus.RATIONAL, value=value)

    @classmethod
    def irrational(cls, reason: Optional[str] = None) -> "Verdict":
        return cls(status=VerdictStatus.IRRATIONAL, reason=reason)

    @classmethod
    def exceptional(cls, exception: str, value: Optional[Fraction] = None) -> "Verdict":
        return cls(status=VerdictStatus.EXCEPTION, exception=exception, value=value)

    @classmethod
    def degenerate(cls, reason: str) -> "Verdict":
        return cls(status=VerdictStatus.DEGENERATE, reason=reason)

    def to_dict(self) -> dict:
        """Convert verdict to its JSON form, dropping absent fields"""
        return self.model_dump(mode="json", exclude_none=True)

    def __str__(self):
        if self.value is not None:
            return f"{self.status.value}({format_fraction(self.value)})"
        return self.status.value
