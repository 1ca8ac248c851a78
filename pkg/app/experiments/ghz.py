"""GHZ basis incommensurateness: linear polarisation at phi needs a rational cos(2 phi),
circular polarisation needs phi to be a rational angle."""
import math
from fractions import Fraction
from typing import Optional

import numpy as np

from app.exceptions import ConfigError
from app.experiments.base import BaseExperiment, ExperimentRecord
from app.logger import logger
from app.numtheory.angles import RationalAngle, RationalCosine
from app.numtheory.niven import cosine_is_exception, exception_label, is_exception_angle
from app.schema import Admissibility, to_fraction


CIRCULAR = np.array([[1, -1j], [1, 1j]])


def composed_transform(phi: float) -> np.ndarray:
    """(L, R) in terms of (v', h'): the circular transform after undoing the rotation by phi."""
    rotation_inverse = np.array([[math.cos(phi), math.sin(phi)], [-math.sin(phi), math.cos(phi)]])
    return CIRCULAR @ rotation_inverse


def phase_entries(matrix: np.ndarray) -> list:
    return [
        {"modulus": float(abs(z)), "phase_turns": float(np.angle(z) / (2 * np.pi))}
        for z in matrix.ravel()
    ]


class GhzConflict(BaseExperiment):
    name: str = "ghz"
    description: str = (
        "Decide whether linear and circular polarisation measurements at the same exact angle "
        "are jointly admissible."
    )

    def execute(
        self,
        phi: Optional[str] = None,
        cos2phi: Optional[str] = None,
        seed: int = 0,
        **kwargs,
    ) -> ExperimentRecord:
        if (phi is None) == (cos2phi is None):
            raise ConfigError("give exactly one of phi (turns) or cos2phi")

        if phi is not None:
            angle = RationalAngle(turns=to_fraction(phi))
            radians = angle.radians
            # circular holds by construction; linear needs cos(2 phi) rational
            if is_exception_angle(angle):
                verdict = {"status": Admissibility.EXCEPTION, "exception": exception_label(angle)}
            else:
                verdict = {"status": Admissibility.CONFLICT}
            given = {"phi": angle.turns}
        else:
            cosine = RationalCosine(value=to_fraction(cos2phi))
            radians = math.acos(float(cosine.value)) / 2
            # linear holds by construction; circular needs 2 phi to be a rational angle
            if cosine_is_exception(cosine):
                verdict = {"status": Admissibility.EXCEPTION, "exception": f"cos(2 phi) = {cosine.value}"}
            else:
                verdict = {"status": Admissibility.CONFLICT}
            given = {"cos2phi": cosine.value}

        matrix = composed_transform(radians)
        entries = phase_entries(matrix)
        unit_modulus = bool(np.allclose(np.abs(matrix), 1.0))
        logger.info(f"ghz {given}: {verdict['status'].value}")
        return self.record(
            seed=seed,
            config=given,
            statistics={
                "transform": entries,
                "unit_modulus": unit_modulus,
                "phi_radians": radians,
            },
            verdicts={"joint_measurement": verdict},
            headline="unit_modulus",
        )
