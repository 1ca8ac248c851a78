import math
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from app.bitcore.bitstring import BitString
from app.bitcore.kernels import length_mask, popcount
from app.exceptions import ShapeError, UndefinedCorrelationError, UndefinedStatisticsError
from app.schema import Rational


class EnsembleStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    minus_fraction: Rational = Field(..., description="Fraction of MINUS among non-null bits")
    mean: Rational = Field(..., description="Mean of the +1/-1 outcomes")
    stddev: float = Field(..., description="Standard deviation sqrt(1 - mean^2)")


def correlation(a: BitString, b: BitString) -> Fraction:
    """(matches - mismatches) / count over positions where both bits are non-null."""
    if a.length != b.length:
        raise ShapeError(f"cannot correlate strings of length {a.length} and {b.length}")
    valid = length_mask(a.length) & ~(a.nulls | b.nulls)
    count = popcount(valid)
    if count == 0:
        raise UndefinedCorrelationError("no position where both bits are non-null")
    mismatches = popcount((a.values ^ b.values) & valid)
    return Fraction(count - 2 * mismatches, count)


def ensemble_stats(s: BitString) -> EnsembleStats:
    count = s.length - s.params.n_X
    if count == 0:
        raise UndefinedStatisticsError("string holds only NULL symbols")
    minus_fraction = Fraction(popcount(s.values), count)
    mean = 1 - 2 * minus_fraction
    return EnsembleStats(
        minus_fraction=minus_fraction,
        mean=mean,
        stddev=math.sqrt(1 - mean * mean),
    )
