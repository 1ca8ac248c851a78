from fractions import Fraction
from typing import Union

from app.bitcore.bitstring import EnsembleParams
from app.numtheory.angles import NIVEN_COSINES, RATIONAL_SQUARE_COSINES, RationalAngle, RationalCosine
from app.schema import Verdict, format_fraction


EXCEPTION_COSINES = frozenset(NIVEN_COSINES.values())


def exception_label(a: RationalAngle) -> str:
    d = a.denominator
    if d in NIVEN_COSINES:
        return f"niven: cos = {format_fraction(NIVEN_COSINES[d])} (denominator {d})"
    if d in RATIONAL_SQUARE_COSINES:
        return f"doubled-angle: cos^2 = {format_fraction(RATIONAL_SQUARE_COSINES[d])} (denominator {d})"
    return f"none (denominator {d})"


def niven_classify(a: RationalAngle) -> Verdict:
    """RATIONAL(cos) iff the reduced denominator is 1, 2, 3, 4 or 6."""
    value = NIVEN_COSINES.get(a.denominator)
    if value is None:
        return Verdict.irrational(reason=f"denominator {a.denominator} outside {{1,2,3,4,6}}")
    return Verdict.rational(value)


def cosine_is_exception(r: Union[RationalCosine, Fraction]) -> bool:
    value = r.value if isinstance(r, RationalCosine) else Fraction(r)
    return value in EXCEPTION_COSINES


def is_exception_angle(a: RationalAngle) -> bool:
    """True when the corollary's squaring argument cannot conclude: cos 2a is rational."""
    return a.denominator in RATIONAL_SQUARE_COSINES


def exceptions_removed(params: EnsembleParams) -> bool:
    """True when no exception angle other than 0 lies on the phase grid n/p.

    Odd p (odd n_X) removes the angles with even denominator, p not divisible by 3 removes thirds.
    """
    return params.p % 2 == 1 and params.p % 3 != 0


def on_phase_grid(a: RationalAngle, params: EnsembleParams) -> bool:
    return params.p % a.denominator == 0
