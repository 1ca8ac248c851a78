import math
from fractions import Fraction
from typing import Optional, Union

from mpmath import mp

from app.exceptions import DomainError, InsufficientPrecisionError


def required_digits(max_den: int) -> int:
    return math.ceil(2 * math.log10(max_den) + 10)


def rational_reconstruct(
    x: Union[str, float, Fraction, "mp.mpf"], max_den: int, digits: Optional[int] = None
) -> Optional[Fraction]:
    """Find p/q with q <= max_den within 10^-(digits - 5) of x via continued-fraction convergents.

    `digits` is the number of significant digits x is known to; it defaults to the current
    mpmath precision. Refuses rather than guesses when digits are too few for max_den.
    """
    if max_den < 1:
        raise DomainError(f"max_den must be >= 1, got {max_den}")
    digits = mp.dps if digits is None else digits
    if digits < required_digits(max_den):
        raise InsufficientPrecisionError(
            f"{digits} digits cannot certify denominators up to {max_den}; "
            f"need {required_digits(max_den)}"
        )
    with mp.workdps(digits + 10):
        if isinstance(x, Fraction):
            x = mp.mpf(x.numerator) / x.denominator
        x = mp.mpf(x)
        if not mp.isfinite(x):
            raise DomainError("cannot reconstruct a non-finite value")
        tol = mp.mpf(10) ** (-(digits - 5))

        y = x
        a = int(mp.floor(y))
        h_prev, h = 1, a
        k_prev, k = 0, 1
        while True:
            if mp.fabs(x - mp.mpf(h) / k) < tol:
                return Fraction(h, k)
            frac = y - a
            if frac == 0:
                return None
            y = 1 / frac
            a = int(mp.floor(y))
            h_prev, h = h, a * h + h_prev
            k_prev, k = k, a * k + k_prev
            if k > max_den:
                return None
