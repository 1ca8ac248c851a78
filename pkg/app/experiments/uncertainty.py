"""Qubit uncertainty relation Delta S_x * Delta S_y >= |mean S_z| from bit-string ensembles."""
import math
from fractions import Fraction
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.bitcore.bitstring import EnsembleParams
from app.bitcore.statistics import ensemble_stats
from app.experiments.base import BaseExperiment, ExperimentRecord, params_echo, resolve_params
from app.logger import logger
from app.numtheory.angles import RationalAngle, RationalCosine
from app.numtheory.corollary import TriangleInstance, triangle_verdict
from app.states.qubit import bloch_state
from app.states.skeleton import SkeletonPoint, grid_m


def nominal_tolerance(params: EnsembleParams) -> float:
    return 2 / math.sqrt(params.N)


class SweepSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: int
    min_margin: float
    nominal_violations: int
    grid_violations: int
    continuum_min_margin: float


def uncertainty_sweep(params: EnsembleParams) -> SweepSummary:
    """Check the relation at every skeleton point at once.

    Uses the ensemble laws of bloch_state (mean = 1 - m/N, stddev = sqrt(1 - mean^2)) on the
    grid-rounded x and y settings instead of building each string.
    """
    N, p = params.N, params.p
    m = np.arange(2 * N + 1)[:, None]
    n = np.arange(p)[None, :]
    cz = 1 - m / N
    sin_theta = np.sqrt(np.clip(1 - cz**2, 0, None))
    phi = 2 * np.pi * n / p
    cx, cy = sin_theta * np.cos(phi), sin_theta * np.sin(phi)
    # np.rint rounds half to even, matching grid_m
    mean_x = 1 - np.clip(np.rint(N * (1 - cx)), 0, 2 * N) / N
    mean_y = 1 - np.clip(np.rint(N * (1 - cy)), 0, 2 * N) / N
    product = np.sqrt(1 - mean_x**2) * np.sqrt(1 - mean_y**2)
    margin = product - np.abs(cz)
    continuum = np.sqrt((1 - cx**2) * (1 - cy**2)) - np.abs(cz)
    return SweepSummary(
        points=int(margin.size),
        min_margin=float(margin.min()),
        nominal_violations=int((margin < -nominal_tolerance(params)).sum()),
        grid_violations=int((margin < -1e-12).sum()),
        continuum_min_margin=float(continuum.min()),
    )


class UncertaintyHarness(BaseExperiment):
    name: str = "uncertainty"
    description: str = (
        "Measure a skeleton state along z, x and y and check Delta S_x * Delta S_y >= |mean S_z| "
        "to nominal accuracy, with the contextuality verdict for the q-z-x triangle."
    )

    def execute(
        self,
        m: int = 0,
        phase: int = 0,
        N: Optional[int] = None,
        n_X: Optional[int] = None,
        seed: int = 0,
        sweep: bool = False,
        hbar_units: bool = False,
        **kwargs,
    ) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        if sweep:
            summary = uncertainty_sweep(params)
            return self.record(
                seed=seed,
                config={**params_echo(params), "sweep": True},
                statistics={**summary.model_dump(), "tolerance": nominal_tolerance(params)},
                verdicts={"holds": summary.nominal_violations == 0},
                headline="min_margin",
            )

        q = SkeletonPoint(m=m, n=phase, params=params)
        z_stats = ensemble_stats(bloch_state(q))
        vq = q.to_vector()
        # x and y settings are realised on the amplitude grid relative to q
        x_state = bloch_state(SkeletonPoint(m=grid_m(float(vq[0]), params.N), n=0, params=params))
        y_state = bloch_state(SkeletonPoint(m=grid_m(float(vq[1]), params.N), n=0, params=params))
        x_stats, y_stats = ensemble_stats(x_state), ensemble_stats(y_state)

        mean_z = z_stats.mean
        var_x, var_y = 1 - x_stats.mean**2, 1 - y_stats.mean**2
        product = x_stats.stddev * y_stats.stddev
        tolerance = nominal_tolerance(params)
        continuum_margin = math.sqrt((1 - vq[0] ** 2) * (1 - vq[1] ** 2)) - abs(float(mean_z))

        statistics = {
            "mean_z": mean_z,
            "mean_x": x_stats.mean,
            "mean_y": y_stats.mean,
            "delta_x": x_stats.stddev,
            "delta_y": y_stats.stddev,
            "product": product,
            "margin": product - abs(float(mean_z)),
            "continuum_margin": max(continuum_margin, 0.0),
            "tolerance": tolerance,
        }
        if hbar_units:
            # S = (hbar/2) sigma with hbar = 1
            statistics["hbar_half"] = {
                "delta_product": product / 4,
                "bound": abs(float(mean_z)) / 4,
            }

        contextuality = triangle_verdict(
            TriangleInstance(
                r_ab=RationalCosine(value=q.cosine),
                r_bc=RationalCosine(value=Fraction(0)),
                phi_b=RationalAngle(turns=q.phase_turns),
            )
        )
        logger.info(f"uncertainty at {q}: product {product:.6f} vs |Sz| {float(abs(mean_z)):.6f}")
        return self.record(
            seed=seed,
            config={**params_echo(params), "m": m, "phase": phase, "hbar_units": hbar_units},
            statistics=statistics,
            verdicts={
                "nominal": product >= abs(float(mean_z)) - tolerance,
                "exact_grid": var_x * var_y >= mean_z * mean_z,
                "contextuality": contextuality,
            },
            headline="margin",
        )
