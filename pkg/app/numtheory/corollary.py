"""Decision procedures for rational side-cosines of spherical triangles with rational vertex angles.

A triangle with rational side cosines r_ab, r_bc and vertex angle phi_b at b has, by the
cosine rule, cos(ac) = r_ab*r_bc + sin(ab)*sin(bc)*cos(phi_b). If cos(ac) were rational then
(1 - r_ab^2)(1 - r_bc^2)cos^2(phi_b) would be rational, hence cos(2*phi_b) would be, which
Niven's theorem rules out unless 2*phi_b is itself an exception angle.
"""
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

from app.numtheory.angles import RationalAngle, RationalCosine, cosine_sign, cosine_squared, rational_sqrt
from app.numtheory.niven import exception_label, is_exception_angle
from app.schema import Verdict


_STRAIGHT = (Fraction(0), Fraction(1, 2))


def _proper(r: RationalCosine) -> bool:
    return abs(r.value) < 1


class TriangleInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    r_ab: RationalCosine
    r_bc: RationalCosine
    phi_b: RationalAngle

    @computed_field
    @property
    def nondegenerate(self) -> bool:
        return _proper(self.r_ab) and _proper(self.r_bc) and self.phi_b.turns not in _STRAIGHT


class QuadrupleInstance(BaseModel):
    """Three rational setting cosines and the two free vertex angles at Alice's settings."""

    model_config = ConfigDict(frozen=True)

    r_x0y0: RationalCosine
    r_x0y1: RationalCosine
    r_x1y0: RationalCosine
    phi_x0: RationalAngle
    phi_x1: RationalAngle
    independent: bool = Field(True, description="Caller asserts phi_x0 and phi_x1 are free parameters")

    @computed_field
    @property
    def nondegenerate(self) -> bool:
        return (
            all(_proper(r) for r in (self.r_x0y0, self.r_x0y1, self.r_x1y0))
            and self.phi_x0.turns not in _STRAIGHT
            and self.phi_x1.turns not in _STRAIGHT
        )


def third_side_cosine(r_ab: Fraction, r_bc: Fraction, phi_b: RationalAngle) -> Optional[Fraction]:
    """Exact cos of the side opposite phi_b when it is rational, else None."""
    cos_sq = cosine_squared(phi_b)
    if cos_sq is None:
        return None
    cross = rational_sqrt((1 - r_ab * r_ab) * (1 - r_bc * r_bc) * cos_sq)
    if cross is None:
        return None
    return r_ab * r_bc + cosine_sign(phi_b) * cross


def triangle_verdict(t: TriangleInstance) -> Verdict:
    if not t.nondegenerate:
        return Verdict.degenerate("collinear sides or straight vertex angle")
    if is_exception_angle(t.phi_b):
        value = third_side_cosine(t.r_ab.value, t.r_bc.value, t.phi_b)
        return Verdict.exceptional(exception_label(t.phi_b), value)
    return Verdict.irrational(
        reason=f"cos(2*phi_b) irrational for phi_b = {t.phi_b}"
    )


def quadruple_verdict(q: QuadrupleInstance) -> Verdict:
    """Verdict on cos(x1 y1) given the three rational cosines of the other setting pairs.

    cos(y0 y1) has two cosine-rule expressions, one through x0 and one through x1. Through x0
    it is irrational, so a rational cos(x1 y1) would tie cos(phi_x1) to cos(phi_x0) algebraically,
    which independent non-exceptional rational angles cannot satisfy.
    """
    if not q.independent or q.phi_x0 == q.phi_x1:
        return Verdict.degenerate("vertex angles are not independent")
    if not q.nondegenerate:
        return Verdict.degenerate("collinear sides or straight vertex angle")
    for phi in (q.phi_x0, q.phi_x1):
        if is_exception_angle(phi):
            return Verdict.exceptional(exception_label(phi))
    return Verdict.irrational(
        reason=f"independent vertex angles {q.phi_x0} and {q.phi_x1}"
    )
