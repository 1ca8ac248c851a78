from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime

from app.bitcore.bitstring import EnsembleParams
from app.exceptions import DomainError, ShapeError
from app.schema import Rational


class PAdicLabel(BaseModel):
    """Base-p digits of a trajectory label, least significant first."""

    model_config = ConfigDict(frozen=True)

    base: int = Field(..., ge=2)
    digits: List[int] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_digits(self) -> "PAdicLabel":
        if any(not 0 <= d < self.base for d in self.digits):
            raise DomainError(f"digits must lie in [0, {self.base})")
        return self


class PAdicDistance(BaseModel):
    """p^(-k) for a common prefix of k digits; identical labels have k = None and value 0."""

    model_config = ConfigDict(frozen=True)

    base: int
    k: Optional[int]
    value: Rational

    def __float__(self) -> float:
        return float(self.value)


def padic_valuation(n: int, p: int) -> int:
    """Largest v with p^v dividing n (n != 0)."""
    if n == 0:
        raise DomainError("the valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def padic_distance(u: PAdicLabel, v: PAdicLabel) -> PAdicDistance:
    if u.base != v.base:
        raise ShapeError(f"labels in bases {u.base} and {v.base}")
    if len(u.digits) != len(v.digits):
        raise ShapeError(f"labels of {len(u.digits)} and {len(v.digits)} digits")
    for k, (a, b) in enumerate(zip(u.digits, v.digits)):
        if a != b:
            return PAdicDistance(base=u.base, k=k, value=Fraction(1, u.base**k))
    return PAdicDistance(base=u.base, k=None, value=Fraction(0))


def check_base(base: int, require_prime: bool = False, pythagorean: bool = False):
    if (require_prime or pythagorean) and not isprime(base):
        raise DomainError(f"p-adic base {base} is not prime")
    if pythagorean and base % 4 != 1:
        raise DomainError(f"p-adic base {base} is not a Pythagorean prime")


def position_label(
    index: int,
    params: EnsembleParams,
    depth: int,
    base: Optional[int] = None,
    require_prime: bool = False,
    pythagorean: bool = False,
) -> PAdicLabel:
    """Label a trajectory index with `depth` base-p digits; p defaults to 4N + n_X."""
    base = base or params.p
    check_base(base, require_prime, pythagorean)
    if index < 0:
        raise DomainError(f"index must be non-negative, got {index}")
    digits = []
    for _ in range(depth):
        index, digit = divmod(index, base)
        digits.append(digit)
    return PAdicLabel(base=base, digits=digits)
