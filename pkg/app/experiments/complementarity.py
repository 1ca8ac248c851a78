"""Mach-Zehnder complementarity: an exact arm-length phase supports interference or which-way
statistics, never both, outside the Niven exceptions."""
from fractions import Fraction
from typing import Literal, Optional

import numpy as np
from pydantic import Field

from app.bitcore.statistics import ensemble_stats
from app.config import config
from app.exceptions import ConfigError
from app.experiments.base import BaseExperiment, ExperimentRecord, params_echo, resolve_params
from app.logger import logger
from app.numtheory.angles import RationalAngle, cosine_value
from app.numtheory.niven import cosine_is_exception, exception_label, niven_classify
from app.numtheory.niven import exceptions_removed as nulls_remove_exceptions
from app.schema import Admissibility, VerdictStatus, to_fraction
from app.states.qubit import bloch_state
from app.states.sampling import EpsilonDisk, SettingConstraint, sample_exact_setting
from app.states.skeleton import SkeletonPoint, grid_m, grid_n


# Angle in turns on [0, 1/2] with the given exceptional cosine
_EXCEPTION_TURNS = {
    Fraction(1): Fraction(0),
    Fraction(1, 2): Fraction(1, 6),
    Fraction(0): Fraction(1, 4),
    Fraction(-1, 2): Fraction(1, 3),
    Fraction(-1): Fraction(1, 2),
}

_STRAIGHT = (Fraction(0), Fraction(1, 2))


def which_way_counterfactual(cosine: Fraction, params) -> dict:
    """Is the interference setting with this exact cosine also a rational angle on the phase grid?"""
    if not cosine_is_exception(cosine):
        return {"mode": "which-way", "status": Admissibility.INADMISSIBLE}
    angle = RationalAngle(turns=_EXCEPTION_TURNS[cosine])
    if params.p % angle.denominator:
        return {
            "mode": "which-way",
            "status": Admissibility.INADMISSIBLE,
            "detail": f"{angle} is off the phase grid n/{params.p}",
        }
    return {"mode": "which-way", "status": Admissibility.EXCEPTION, "exception": exception_label(angle)}


def interference_counterfactual(phase: RationalAngle) -> dict:
    verdict = niven_classify(phase)
    if verdict.status is VerdictStatus.RATIONAL:
        return {
            "mode": "interference",
            "status": Admissibility.EXCEPTION,
            "exception": exception_label(phase),
        }
    return {"mode": "interference", "status": Admissibility.INADMISSIBLE}


class MzComplementarity(BaseExperiment):
    name: str = "mz"
    description: str = (
        "Sample an exact interferometer phase inside the nominal disk for one mode and test the "
        "counterfactual admissibility of the other mode on the same exact phase."
    )

    def execute(
        self,
        phi: str = "0",
        N: Optional[int] = None,
        n_X: Optional[int] = None,
        seed: int = 0,
        mode: Literal["interference", "which-way"] = "interference",
        epsilon: Optional[str] = None,
        max_candidates: Optional[int] = None,
        **kwargs,
    ) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        nominal_phi = RationalAngle(turns=to_fraction(phi))
        eps = to_fraction(epsilon or config.census.epsilon)
        cap = max_candidates or config.census.max_candidates
        rng = np.random.default_rng(seed)

        if mode == "interference":
            # Phase enters as the polar angle: cos(phi*) = 1 - m/N on the grid
            nominal = SkeletonPoint(m=grid_m(cosine_value(nominal_phi), params.N), n=0, params=params)
            exact = sample_exact_setting(
                EpsilonDisk(nominal=nominal, epsilon=eps),
                SettingConstraint.rational_cosine(),
                rng,
                cap,
                predicate=lambda pt: 0 < pt.m < 2 * params.N,
            )
            state = bloch_state(SkeletonPoint(m=exact.m, n=0, params=params))
            counterfactual = which_way_counterfactual(exact.cosine, params)
            setting = {"m": exact.m, "cos_phi": exact.cosine}
        elif mode == "which-way":
            # Phase enters as a rational angle n/p on the equator
            nominal = SkeletonPoint(m=params.N, n=grid_n(nominal_phi.turns, params), params=params)
            exact = sample_exact_setting(
                EpsilonDisk(nominal=nominal, epsilon=eps),
                SettingConstraint.rational_angle(),
                rng,
                cap,
                predicate=lambda pt: pt.phase_turns not in _STRAIGHT,
            )
            state = bloch_state(exact)
            counterfactual = interference_counterfactual(exact.phase)
            setting = {"n": exact.n, "phi_turns": exact.phase_turns}
        else:
            raise ConfigError(f"unknown mz mode: {mode}")

        stats = ensemble_stats(state)
        # Equatorial ensemble of the which-way mode: 1/2 MINUS for every phase
        which_way = ensemble_stats(bloch_state(SkeletonPoint(m=params.N, n=exact.n, params=params)))
        logger.info(
            f"mz {mode}: exact setting {setting}, counterfactual {counterfactual['status'].value}"
        )
        return self.record(
            seed=seed,
            config={
                **params_echo(params),
                "phi": nominal_phi.turns,
                "mode": mode,
                "epsilon": eps,
                "max_candidates": cap,
            },
            statistics={
                "exact_setting": setting,
                "minus_fraction": stats.minus_fraction,
                "mean": stats.mean,
                "stddev": stats.stddev,
                "which_way_minus_fraction": which_way.minus_fraction,
                "exceptions_removed": nulls_remove_exceptions(params),
            },
            verdicts={
                "realised": {"mode": mode, "status": Admissibility.ADMISSIBLE},
                "counterfactual": counterfactual,
            },
            headline="minus_fraction",
        )
