"""Sequential Stern-Gerlach: measuring a -> b -> c with rational cosines makes the swapped
chain, which needs a rational a-c cosine, inadmissible."""
from collections import Counter
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from app.config import config
from app.exceptions import ConfigError
from app.experiments.base import BaseExperiment, ExperimentRecord, params_echo, resolve_params
from app.logger import logger
from app.numtheory.angles import RationalCosine
from app.numtheory.corollary import TriangleInstance, triangle_verdict
from app.schema import Admissibility, Verdict, VerdictStatus, to_fraction
from app.states.sampling import EpsilonDisk, SettingConstraint, pairwise_disjoint, sample_exact_setting
from app.states.skeleton import SkeletonPoint, exact_relative_cosine, nearest_point, snap_vertex_angle


DiskSpec = Union[EpsilonDisk, Tuple[str, str], str]

DEFAULT_SG_DISKS = ("1/2:0", "1/2:1/4", "0:1/2")

_COUNTERFACTUAL = {
    VerdictStatus.IRRATIONAL: Admissibility.INADMISSIBLE,
    VerdictStatus.EXCEPTION: Admissibility.EXCEPTION,
    VerdictStatus.RATIONAL: Admissibility.ADMISSIBLE,
}


def parse_disk(given: DiskSpec, params, epsilon: Fraction) -> EpsilonDisk:
    """A disk from "cos:turns", a (cos, turns) pair, or an existing EpsilonDisk."""
    if isinstance(given, EpsilonDisk):
        return given
    if isinstance(given, str):
        try:
            cos_text, turns_text = given.split(":")
        except ValueError:
            raise ConfigError(f"disk must be written cos:turns, got {given!r}")
        given = (cos_text, turns_text)
    cosine, turns = (to_fraction(v) for v in given)
    return EpsilonDisk(nominal=nearest_point(cosine, turns, params), epsilon=epsilon)


def sample_chain(disks: Sequence[EpsilonDisk], rng: np.random.Generator, cap: int) -> List[SkeletonPoint]:
    """Exact settings for each disk, each with a rational cosine to the previous one."""
    chain: List[SkeletonPoint] = []
    for disk in disks:
        ref = chain[-1] if chain else None
        chain.append(sample_exact_setting(disk, SettingConstraint.rational_cosine(ref), rng, cap))
    return chain


def chain_verdict(a: SkeletonPoint, b: SkeletonPoint, c: SkeletonPoint) -> Tuple[Verdict, dict]:
    phi_b = snap_vertex_angle(a, b, c)
    r_ab, r_bc = exact_relative_cosine(a, b), exact_relative_cosine(b, c)
    detail = {
        "a": {"m": a.m, "n": a.n},
        "b": {"m": b.m, "n": b.n},
        "c": {"m": c.m, "n": c.n},
        "r_ab": r_ab,
        "r_bc": r_bc,
        "phi_b": phi_b.turns if phi_b is not None else None,
    }
    if phi_b is None:
        return Verdict.degenerate("exact settings are collinear at b"), detail
    triangle = TriangleInstance(
        r_ab=RationalCosine(value=r_ab), r_bc=RationalCosine(value=r_bc), phi_b=phi_b
    )
    return triangle_verdict(triangle), detail


class SgNoncommutativity(BaseExperiment):
    name: str = "sg"
    description: str = (
        "Sample exact settings a*, b*, c* with rational cosines along the measured chain and "
        "decide whether the swapped chain's a*-c* cosine can be rational."
    )

    def execute(
        self,
        disks: Sequence[DiskSpec] = DEFAULT_SG_DISKS,
        N: Optional[int] = None,
        n_X: Optional[int] = None,
        seed: int = 0,
        epsilon: Optional[str] = None,
        runs: int = 1,
        max_candidates: Optional[int] = None,
        **kwargs,
    ) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        eps = to_fraction(epsilon or config.census.epsilon)
        cap = max_candidates or config.census.max_candidates
        triple = [parse_disk(d, params, eps) for d in disks]
        if len(triple) != 3:
            raise ConfigError(f"sg needs three disks, got {len(triple)}")
        if not pairwise_disjoint(triple):
            raise ConfigError("sg disks must be pairwise disjoint")
        if runs < 1:
            raise ConfigError(f"runs must be positive, got {runs}")

        rng = np.random.default_rng(seed)
        counts = Counter()
        first = None
        for _ in range(runs):
            verdict, detail = chain_verdict(*sample_chain(triple, rng, cap))
            counts[verdict.status.value] += 1
            if verdict.status is VerdictStatus.EXCEPTION:
                logger.warning(f"sg exception at b*: {verdict.exception}")
            if first is None:
                first = (verdict, detail)

        verdict, detail = first
        logger.info(f"sg: {dict(counts)} over {runs} runs")
        return self.record(
            seed=seed,
            config={
                **params_echo(params),
                "disks": [
                    {"m": d.nominal.m, "n": d.nominal.n, "cos": d.nominal.cosine, "turns": d.nominal.phase_turns}
                    for d in triple
                ],
                "epsilon": eps,
                "runs": runs,
                "max_candidates": cap,
            },
            statistics={
                "first_run": detail,
                "counts": {s.value: counts.get(s.value, 0) for s in VerdictStatus},
                "inadmissible_runs": counts.get(VerdictStatus.IRRATIONAL.value, 0),
            },
            verdicts={
                "triangle": verdict,
                "swapped_order": {
                    "status": _COUNTERFACTUAL.get(verdict.status, verdict.status.value)
                },
            },
            headline="inadmissible_runs",
        )
