from fractions import Fraction

from pydantic import BaseModel, ConfigDict

from app.bitcore.bitstring import BitString, EnsembleParams, concat
from app.bitcore.operators import interp_i1
from app.bitcore.statistics import correlation
from app.exceptions import DomainError


class BellPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    B_a: BitString
    B_b: BitString
    m_a: int
    m_b: int

    @property
    def correlation(self) -> Fraction:
        return correlation(self.B_a, self.B_b)


def bell_pair(m_a: int, m_b: int, params: EnsembleParams) -> BellPair:
    """B_a = i1^(m_a)(1) || i1^(m_a)(-1), B_b = i1^(m_b)(-1) || i1^(m_b)(1).

    correlation(B_a, B_b) = |m_b - m_a| / N - 1.
    """
    for name, m in (("m_a", m_a), ("m_b", m_b)):
        if not 0 <= m <= 2 * params.N:
            raise DomainError(f"{name} must lie in [0, {2 * params.N}], got {m}")
    unit = BitString.unit(params)
    return BellPair(
        B_a=concat(interp_i1(unit, m_a), interp_i1(-unit, m_a)),
        B_b=concat(interp_i1(-unit, m_b), interp_i1(unit, m_b)),
        m_a=m_a,
        m_b=m_b,
    )
