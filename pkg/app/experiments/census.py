"""Statistical-independence census over exact settings inside four (or three) epsilon-disks.

Three setting pairs are realised with exact rational cosines; the fourth pair's cosine is
decided by the corollary, with vertex angles read off the realised settings and snapped to
the phase grid. Its admissible count vanishes unless an exception angle turns up.
"""
from collections import Counter
from fractions import Fraction
from itertools import islice
from math import gcd
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.bitcore.bitstring import EnsembleParams
from app.config import config
from app.exceptions import ConfigError, NoCandidateError
from app.experiments.base import BaseExperiment, ExperimentRecord, params_echo, resolve_params
from app.logger import logger
from app.numtheory.angles import RationalAngle, RationalCosine
from app.numtheory.corollary import QuadrupleInstance, TriangleInstance, quadruple_verdict, triangle_verdict
from app.numtheory.niven import is_exception_angle
from app.schema import Verdict, VerdictStatus, to_fraction
from app.states.sampling import EpsilonDisk, SettingConstraint, enumerate_candidates, pairwise_disjoint
from app.states.skeleton import SkeletonPoint, exact_relative_cosine, nearest_point, snap_vertex_angle


# (cos, turns) of x0, x1, y0, y1. Pairs x0-y0 and x1-y0 sit a quarter turn apart, x0-y1 share a
# meridian with Pythagorean cosines, and x1-y1 are half a turn apart with no rational cosine.
DEFAULT_DISKS = (
    (Fraction(4, 5), Fraction(0)),
    (Fraction(-1, 2), Fraction(1, 2)),
    (Fraction(3, 5), Fraction(1, 4)),
    (Fraction(3, 5), Fraction(0)),
)

Pairs = Dict[Tuple[int, int], Fraction]


def vertex_pool(max_denominator: int, exceptions: bool = False) -> List[RationalAngle]:
    """Reduced angles k/d with d <= max_denominator, excluding (or keeping only) exception angles."""
    pool = []
    for d in range(2, max_denominator + 1):
        for k in range(1, d):
            if gcd(k, d) != 1:
                continue
            angle = RationalAngle.of(k, d)
            if angle.turns == Fraction(1, 2):
                continue
            if is_exception_angle(angle) == exceptions:
                pool.append(angle)
    return pool


def default_disks(params: EnsembleParams, epsilon: Fraction) -> List[EpsilonDisk]:
    return [
        EpsilonDisk(nominal=nearest_point(cosine, turns, params), epsilon=epsilon)
        for cosine, turns in DEFAULT_DISKS
    ]


class SiCensusConfig(BaseModel):
    """Disks in order x0, x1, y0, y1 (variant "chsh") or a, b, c (variant "bell").

    Without a pool the vertex angles come from the realised settings.
    """

    model_config = ConfigDict(frozen=True)

    params: EnsembleParams
    disks: List[EpsilonDisk]
    pool: Optional[List[RationalAngle]] = None
    seed: int = Field(0, ge=0)
    max_candidates: int = Field(10_000, ge=1)
    variant: Literal["chsh", "bell"] = "chsh"

    @model_validator(mode="after")
    def check_config(self) -> "SiCensusConfig":
        expected = 4 if self.variant == "chsh" else 3
        if len(self.disks) != expected:
            raise ConfigError(f"variant {self.variant} needs {expected} disks, got {len(self.disks)}")
        if not pairwise_disjoint(self.disks):
            raise ConfigError("census disks must be pairwise disjoint")
        if self.pool is not None and len(self.pool) < 2:
            raise ConfigError("vertex-angle pool needs at least two angles")
        return self


def exact_pairs(rows: Sequence[SkeletonPoint], cols: Sequence[SkeletonPoint]) -> Pairs:
    """Exact relative cosines keyed by (row, col); pairs with an irrational cosine are absent."""
    pairs = {}
    for i, u in enumerate(rows):
        for j, v in enumerate(cols):
            r = exact_relative_cosine(u, v)
            if r is not None:
                pairs[(i, j)] = r
    return pairs


def _partners(pairs: Pairs) -> Dict[int, List[int]]:
    out: Dict[int, List[int]] = {}
    for i, j in sorted(pairs):
        out.setdefault(i, []).append(j)
    return out


def _quadruples(r00: Pairs, r01: Pairs, r10: Pairs) -> Iterator[Tuple[int, int, int, int]]:
    """(i0, i1, j0, j1) with all three required pairs exact, in (i0, j0, i1, j1) order."""
    y0_of, y1_of = _partners(r00), _partners(r01)
    x1_of = _partners({(j, i): r for (i, j), r in r10.items()})
    for i0 in sorted(set(y0_of) & set(y1_of)):
        for j0 in y0_of[i0]:
            for i1 in x1_of.get(j0, []):
                for j1 in y1_of[i0]:
                    yield i0, i1, j0, j1


def _triples(r_ab: Pairs, r_bc: Pairs) -> Iterator[Tuple[int, int, int]]:
    b_of = _partners(r_ab)
    c_of = _partners(r_bc)
    for i in sorted(b_of):
        for j in b_of[i]:
            for k in c_of.get(j, []):
                yield i, j, k


def _pool_angles(pool: Sequence[RationalAngle], rng: np.random.Generator, size: int) -> List[RationalAngle]:
    picks = rng.choice(len(pool), size=size, replace=False)
    return [pool[int(i)] for i in picks]


def _chsh_verdict(
    quad: Tuple[int, int, int, int],
    points: Sequence[Sequence[SkeletonPoint]],
    cosines: Tuple[Pairs, Pairs, Pairs],
    pool: Optional[Sequence[RationalAngle]],
    rng: np.random.Generator,
) -> Verdict:
    i0, i1, j0, j1 = quad
    X0, X1, Y0, Y1 = points
    r00, r01, r10 = cosines
    if pool is None:
        # angle at each of Alice's settings between Bob's two settings
        phi_x0 = snap_vertex_angle(Y0[j0], X0[i0], Y1[j1])
        phi_x1 = snap_vertex_angle(Y0[j0], X1[i1], Y1[j1])
        if phi_x0 is None or phi_x1 is None:
            return Verdict.degenerate("exact settings are collinear at an Alice setting")
    else:
        phi_x0, phi_x1 = _pool_angles(pool, rng, 2)
    return quadruple_verdict(
        QuadrupleInstance(
            r_x0y0=RationalCosine(value=r00[(i0, j0)]),
            r_x0y1=RationalCosine(value=r01[(i0, j1)]),
            r_x1y0=RationalCosine(value=r10[(i1, j0)]),
            phi_x0=phi_x0,
            phi_x1=phi_x1,
        )
    )


def _bell_verdict(
    triple: Tuple[int, int, int],
    points: Sequence[Sequence[SkeletonPoint]],
    cosines: Tuple[Pairs, Pairs],
    pool: Optional[Sequence[RationalAngle]],
    rng: np.random.Generator,
) -> Verdict:
    i, j, k = triple
    A, B, C = points
    r_ab, r_bc = cosines
    if pool is None:
        phi_b = snap_vertex_angle(A[i], B[j], C[k])
        if phi_b is None:
            return Verdict.degenerate("exact settings are collinear at b")
    else:
        phi_b = _pool_angles(pool, rng, 1)[0]
    return triangle_verdict(
        TriangleInstance(
            r_ab=RationalCosine(value=r_ab[(i, j)]),
            r_bc=RationalCosine(value=r_bc[(j, k)]),
            phi_b=phi_b,
        )
    )


def si_census(cfg: SiCensusConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    candidates = [
        enumerate_candidates(d, SettingConstraint.rational_cosine(), cfg.max_candidates)
        for d in cfg.disks
    ]
    for disk, found in zip(cfg.disks, candidates):
        if not found:
            raise NoCandidateError(f"no exact setting in disk around {disk.nominal}")
    sizes = [len(c) for c in candidates]
    logger.debug(f"census candidates per disk: {sizes}")
    verdicts = Counter()

    if cfg.variant == "chsh":
        X0, X1, Y0, Y1 = candidates
        cosines = exact_pairs(X0, Y0), exact_pairs(X0, Y1), exact_pairs(X1, Y0)
        r00, r01, r10 = cosines
        for quad in islice(_quadruples(*cosines), cfg.max_candidates):
            verdict = _chsh_verdict(quad, candidates, cosines, cfg.pool, rng)
            verdicts[verdict.status.value] += 1
        fourth = exact_pairs(X1, Y1)
        counts = {
            "00": len(r00),
            "01": len(r01),
            "10": len(r10),
            "11": verdicts.get(VerdictStatus.EXCEPTION.value, 0),
        }
        # Alice's x0* settings that stay exact whichever of Bob's disks is measured
        shared = len({i for i, _ in r00} & {i for i, _ in r01})
    else:
        A, B, C = candidates
        cosines = exact_pairs(A, B), exact_pairs(B, C)
        r_ab, r_bc = cosines
        for triple in islice(_triples(*cosines), cfg.max_candidates):
            verdict = _bell_verdict(triple, candidates, cosines, cfg.pool, rng)
            verdicts[verdict.status.value] += 1
        fourth = exact_pairs(A, C)
        counts = {
            "ab": len(r_ab),
            "bc": len(r_bc),
            "ac": verdicts.get(VerdictStatus.EXCEPTION.value, 0),
        }
        shared = len({j for _, j in r_ab} & {j for j, _ in r_bc})

    if not verdicts:
        raise NoCandidateError(
            f"no exact-setting combination satisfies the {len(counts) - 1} required rational cosines"
        )
    exception_flagged = verdicts.get(VerdictStatus.EXCEPTION.value, 0) > 0
    if exception_flagged:
        logger.warning(f"census: {verdicts[VerdictStatus.EXCEPTION.value]} exception completions")
    return {
        "candidates": sizes,
        "counts": counts,
        "census": {s.value: verdicts.get(s.value, 0) for s in VerdictStatus},
        "decided": sum(verdicts.values()),
        "shared_settings": shared,
        "exact_fourth_pairs": len(fourth),
        "exception_flagged": exception_flagged,
    }


class SiCensus(BaseExperiment):
    name: str = "si-census"
    description: str = (
        "Enumerate exact settings in the epsilon-disks and census which setting combinations "
        "admit rational cosines for every pair."
    )

    def execute(
        self,
        N: Optional[int] = 200,
        n_X: Optional[int] = None,
        seed: int = 0,
        epsilon: Optional[str] = None,
        variant: Literal["chsh", "bell"] = "chsh",
        pool: Optional[Sequence[str]] = None,
        pool_max_denominator: Optional[int] = None,
        exception_pool: bool = False,
        disks: Optional[List[EpsilonDisk]] = None,
        max_candidates: Optional[int] = None,
        **kwargs,
    ) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        eps = to_fraction(epsilon or config.census.epsilon)
        cap = max_candidates or config.census.max_candidates
        angles = None
        if pool:
            angles = [RationalAngle(turns=to_fraction(a)) for a in pool]
        elif exception_pool or pool_max_denominator:
            angles = vertex_pool(
                pool_max_denominator or config.census.pool_max_denominator, exception_pool
            )
        if disks is None:
            disks = default_disks(params, eps)
            if variant == "bell":
                disks = disks[:1] + disks[2:3] + disks[1:2]
        cfg = SiCensusConfig(
            params=params, disks=disks, pool=angles, seed=seed, max_candidates=cap, variant=variant
        )
        statistics = si_census(cfg)
        logger.info(f"si-census {variant}: counts {statistics['counts']}")
        counterfactual = "11" if variant == "chsh" else "ac"
        return self.record(
            seed=seed,
            config={
                **params_echo(params),
                "variant": variant,
                "epsilon": eps,
                "max_candidates": cap,
                "vertex_angles": "pool" if angles is not None else "geometry",
                "pool": [a.turns for a in angles] if angles is not None else None,
                "disks": [{"m": d.nominal.m, "n": d.nominal.n} for d in disks],
            },
            statistics={**statistics, "counterfactual_count": statistics["counts"][counterfactual]},
            verdicts={
                "si_violated": statistics["counts"][counterfactual] == 0
                and all(v > 0 for k, v in statistics["counts"].items() if k != counterfactual),
                "exception_flagged": statistics["exception_flagged"],
            },
            headline="counterfactual_count",
        )
