"""Order-of-magnitude estimates: ensemble size from energy, the classical limit and K_max."""
import math
from fractions import Fraction
from typing import Optional

from app.exceptions import ConfigError, DomainError
from app.experiments.base import BaseExperiment, ExperimentRecord
from app.logger import logger
from app.schema import to_fraction


PLANCK_MASS_UG = 21.764
PLANCK_ENERGY_J = 1.9561e9
PLANCK_CONSTANT = 6.62607015e-34
SPEED_OF_LIGHT = 299_792_458.0


def ensemble_size(energy_ratio: float) -> float:
    """N ~ E_Planck / E for a system of energy E."""
    if energy_ratio <= 0:
        raise DomainError(f"energy ratio must be positive, got {energy_ratio}")
    return 1 / energy_ratio


def photon_energy_ratio(wavelength_m: float) -> float:
    if wavelength_m <= 0:
        raise DomainError(f"wavelength must be positive, got {wavelength_m}")
    return PLANCK_CONSTANT * SPEED_OF_LIGHT / wavelength_m / PLANCK_ENERGY_J


def mass_energy_ratio(mass_ug: float) -> float:
    if mass_ug <= 0:
        raise DomainError(f"mass must be positive, got {mass_ug}")
    return mass_ug / PLANCK_MASS_UG


def floor_log2(q: Fraction) -> int:
    """Exact floor(log2(q)) for a positive rational."""
    k = q.numerator.bit_length() - q.denominator.bit_length()
    if Fraction(2) ** k > q:
        k -= 1
    elif Fraction(2) ** (k + 1) <= q:
        k += 1
    return k


def k_max(max_length: Fraction, N: Fraction) -> int:
    """Largest K with 2^(K+1) N <= L, or 0 when not even one qubit fits."""
    return max(floor_log2(Fraction(max_length) / Fraction(N)) - 1, 0)


class ScaleEstimates(BaseExperiment):
    name: str = "scale"
    description: str = (
        "Estimate N from an energy, mass or photon wavelength, flag the classical limit and "
        "bound the qubit count by the longest string."
    )

    def execute(
        self,
        energy_ratio: Optional[str] = None,
        mass_ug: Optional[str] = None,
        wavelength: Optional[str] = None,
        max_length: Optional[str] = None,
        N: Optional[int] = None,
        universe_factor: str = "1",
        seed: int = 0,
        **kwargs,
    ) -> ExperimentRecord:
        sources = [v for v in (energy_ratio, mass_ug, wavelength) if v is not None]
        if len(sources) > 1:
            raise ConfigError("give at most one of energy_ratio, mass_ug, wavelength")
        if not sources and max_length is None:
            raise ConfigError("nothing to estimate: give an energy, mass, wavelength or max_length")

        statistics = {}
        config = {}
        n_estimate = None
        if energy_ratio is not None:
            ratio = float(to_fraction(energy_ratio))
            config["energy_ratio"] = energy_ratio
        elif mass_ug is not None:
            ratio = mass_energy_ratio(float(to_fraction(mass_ug)))
            config["mass_ug"] = mass_ug
            statistics["planck_mass_ug"] = PLANCK_MASS_UG
        elif wavelength is not None:
            ratio = photon_energy_ratio(float(to_fraction(wavelength)))
            config["wavelength_m"] = wavelength
        if sources:
            n_estimate = ensemble_size(ratio)
            statistics.update(
                {
                    "energy_ratio": ratio,
                    "N_estimate": n_estimate,
                    "log10_N": math.log10(n_estimate),
                    "classical": n_estimate <= 1,
                }
            )

        if max_length is not None:
            factor = to_fraction(universe_factor)
            if factor <= 0:
                raise DomainError(f"universe factor must be positive, got {factor}")
            L = to_fraction(max_length) * factor
            n_for_k = Fraction(N) if N is not None else Fraction(max(round(n_estimate or 1), 1))
            K = k_max(L, n_for_k)
            config.update({"max_length": max_length, "universe_factor": factor, "N": n_for_k})
            statistics.update(
                {
                    "K_max": K,
                    "log2_bound": floor_log2(L / n_for_k),
                    "log2_degrees_of_freedom": K + 1,
                }
            )

        logger.info(f"scale: {statistics}")
        return self.record(
            seed=seed,
            config=config,
            statistics=statistics,
            verdicts={"classical": statistics.get("classical", False)},
            headline="K_max" if "K_max" in statistics else "N_estimate",
        )
