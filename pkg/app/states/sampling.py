"""Epsilon-disks of nominal settings and seeded sampling of exact settings inside them."""
import math
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.bitcore.bitstring import EnsembleParams
from app.exceptions import DomainError, NoCandidateError
from app.logger import logger
from app.numtheory.angles import distance_turns
from app.schema import Rational
from app.states.skeleton import SkeletonPoint, exact_relative_cosine, grid_m


class ConstraintKind(str, Enum):
    RATIONAL_COSINE = "RATIONAL_COSINE"
    RATIONAL_ANGLE = "RATIONAL_ANGLE"


class SettingConstraint(BaseModel):
    """RATIONAL_COSINE with respect to `ref` (the pole z when unset), or RATIONAL_ANGLE."""

    model_config = ConfigDict(frozen=True)

    kind: ConstraintKind
    ref: Optional[SkeletonPoint] = None

    @classmethod
    def rational_cosine(cls, ref: Optional[SkeletonPoint] = None) -> "SettingConstraint":
        return cls(kind=ConstraintKind.RATIONAL_COSINE, ref=ref)

    @classmethod
    def rational_angle(cls) -> "SettingConstraint":
        return cls(kind=ConstraintKind.RATIONAL_ANGLE)


class EpsilonDisk(BaseModel):
    """Exact box |cos - cos0| <= epsilon, turn distance <= epsilon around a nominal setting.

    Candidates are taken from `grid`, defaulting to the nominal's own grid.
    """

    model_config = ConfigDict(frozen=True)

    nominal: SkeletonPoint
    epsilon: Rational = Field(..., description="Half-width in cosine and in turns")
    grid: Optional[EnsembleParams] = None

    @field_validator("epsilon")
    @classmethod
    def check_epsilon(cls, v: Fraction) -> Fraction:
        if v <= 0:
            raise DomainError(f"epsilon must be positive, got {v}")
        return v

    @property
    def params(self) -> EnsembleParams:
        return self.grid or self.nominal.params

    def contains(self, pt: SkeletonPoint) -> bool:
        return (
            abs(pt.cosine - self.nominal.cosine) <= self.epsilon
            and distance_turns(pt.phase_turns, self.nominal.phase_turns) <= self.epsilon
        )

    def overlaps(self, other: "EpsilonDisk") -> bool:
        reach = self.epsilon + other.epsilon
        return (
            abs(self.nominal.cosine - other.nominal.cosine) <= reach
            and distance_turns(self.nominal.phase_turns, other.nominal.phase_turns) <= reach
        )

    def m_range(self) -> range:
        N = self.params.N
        c0 = self.nominal.cosine
        lo = max(0, math.ceil((1 - c0 - self.epsilon) * N))
        hi = min(2 * N, math.floor((1 - c0 + self.epsilon) * N))
        return range(lo, hi + 1)

    def n_values(self) -> List[int]:
        p = self.params.p
        t0 = self.nominal.phase_turns
        if 2 * self.epsilon >= 1:
            return list(range(p))
        lo = math.ceil((t0 - self.epsilon) * p)
        hi = math.floor((t0 + self.epsilon) * p)
        return sorted({n % p for n in range(lo, hi + 1)})


def pairwise_disjoint(disks: List[EpsilonDisk]) -> bool:
    return all(
        not a.overlaps(b) for i, a in enumerate(disks) for b in disks[i + 1 :]
    )


def _admissible(pt: SkeletonPoint, constraint: SettingConstraint) -> bool:
    if constraint.kind is ConstraintKind.RATIONAL_COSINE and constraint.ref is not None:
        return exact_relative_cosine(pt, constraint.ref) is not None
    return True


def enumerate_candidates(
    disk: EpsilonDisk,
    constraint: SettingConstraint,
    max_candidates: Optional[int] = None,
    predicate: Optional[Callable[[SkeletonPoint], bool]] = None,
) -> List[SkeletonPoint]:
    """Admissible skeleton points in the disk, in (m, n) order, capped at max_candidates."""
    params = disk.params
    if constraint.kind is ConstraintKind.RATIONAL_ANGLE:
        m_fixed = grid_m(disk.nominal.cosine, params.N)
        m_values = [m for m in disk.m_range() if m == m_fixed]
    else:
        m_values = list(disk.m_range())

    n_values = disk.n_values()
    candidates = []
    for m in m_values:
        for n in n_values:
            pt = SkeletonPoint(m=m, n=n, params=params)
            if not _admissible(pt, constraint):
                continue
            if predicate is not None and not predicate(pt):
                continue
            candidates.append(pt)
            if max_candidates is not None and len(candidates) >= max_candidates:
                return candidates
    return candidates


def sample_exact_setting(
    disk: EpsilonDisk,
    constraint: SettingConstraint,
    rng: Union[np.random.Generator, int],
    max_candidates: Optional[int] = None,
    predicate: Optional[Callable[[SkeletonPoint], bool]] = None,
) -> SkeletonPoint:
    """Uniformly pick one admissible exact setting from the disk; deterministic per seed."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    candidates = enumerate_candidates(disk, constraint, max_candidates, predicate)
    if not candidates:
        raise NoCandidateError(
            f"no skeleton point within epsilon={disk.epsilon} of {disk.nominal} "
            f"satisfies {constraint.kind.value} on the N={disk.params.N} grid"
        )
    logger.debug(f"{len(candidates)} candidates in disk around {disk.nominal}")
    return candidates[int(rng.integers(len(candidates)))]
