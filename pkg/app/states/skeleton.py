import math
from fractions import Fraction
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.bitcore.bitstring import EnsembleParams
from app.exceptions import DomainError
from app.numtheory.angles import RationalAngle
from app.numtheory.corollary import third_side_cosine


class SkeletonPoint(BaseModel):
    """Lattice point of the Bloch sphere with cos(theta) = 1 - m/N and phi = 2*pi*n/p."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=0)
    n: int = Field(..., ge=0)
    params: EnsembleParams

    @model_validator(mode="after")
    def check_range(self) -> "SkeletonPoint":
        if self.m > 2 * self.params.N:
            raise DomainError(f"m must lie in [0, {2 * self.params.N}], got {self.m}")
        if self.n >= self.params.p:
            raise DomainError(f"n must lie in [0, {self.params.p}), got {self.n}")
        return self

    @property
    def cosine(self) -> Fraction:
        return 1 - Fraction(self.m, self.params.N)

    @property
    def phase(self) -> RationalAngle:
        return RationalAngle(turns=Fraction(self.n, self.params.p))

    @property
    def phase_turns(self) -> Fraction:
        return Fraction(self.n, self.params.p) % 1

    @property
    def theta(self) -> float:
        return math.acos(float(self.cosine))

    def to_vector(self) -> np.ndarray:
        theta, phi = self.theta, 2 * math.pi * float(self.phase_turns)
        return np.array(
            [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
        )

    def __str__(self):
        return f"(m={self.m}, n={self.n})"


def grid_m(cosine: Fraction, N: int) -> int:
    """Nearest m with 1 - m/N closest to cosine; ties round half to even."""
    m = round(Fraction(cosine) * -N + N)
    return min(max(m, 0), 2 * N)


def grid_n(turns: Fraction, params: EnsembleParams) -> int:
    return round(Fraction(turns) * params.p) % params.p


def nearest_point(cosine: Fraction, turns: Fraction, params: EnsembleParams) -> SkeletonPoint:
    return SkeletonPoint(m=grid_m(cosine, params.N), n=grid_n(turns, params), params=params)


def exact_relative_cosine(u: SkeletonPoint, v: SkeletonPoint) -> Optional[Fraction]:
    """Exact cosine of the arc between two skeleton points when it is rational, else None."""
    cu, cv = u.cosine, v.cosine
    if abs(cu) == 1 or abs(cv) == 1:
        return cu * cv
    return third_side_cosine(cu, cv, RationalAngle(turns=u.phase_turns - v.phase_turns))


def relative_cosine(u: SkeletonPoint, v: SkeletonPoint) -> float:
    return float(np.clip(u.to_vector() @ v.to_vector(), -1.0, 1.0))


def vertex_angle(a: SkeletonPoint, b: SkeletonPoint, c: SkeletonPoint) -> Optional[float]:
    """Angle at b between the great circles towards a and c, in turns within [0, 1/2]."""
    vb = b.to_vector()
    ta = a.to_vector() - (a.to_vector() @ vb) * vb
    tc = c.to_vector() - (c.to_vector() @ vb) * vb
    if np.linalg.norm(ta) < 1e-12 or np.linalg.norm(tc) < 1e-12:
        return None
    angle = math.atan2(np.linalg.norm(np.cross(ta, tc)), ta @ tc)
    return angle / (2 * math.pi)


def snap_vertex_angle(a: SkeletonPoint, b: SkeletonPoint, c: SkeletonPoint) -> Optional[RationalAngle]:
    """Vertex angle at b snapped to the phase grid n/p, None for a collinear corner."""
    turns = vertex_angle(a, b, c)
    if turns is None:
        return None
    p = b.params.p
    return RationalAngle(turns=Fraction(round(turns * p), p))
