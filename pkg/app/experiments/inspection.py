"""Single-shot inspections of the core constructions, emitted as experiment records."""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.bitcore import codec
from app.bitcore.bitstring import BitString
from app.bitcore.statistics import correlation, ensemble_stats
from app.config import config
from app.exceptions import DomainError
from app.experiments.base import BaseExperiment, ExperimentRecord, params_echo, resolve_params
from app.dynamics.measurement import measure_cluster
from app.dynamics.padic import padic_distance, padic_valuation, position_label
from app.dynamics.unitary import UnitaryProgram, evolve, invert, is_unitary_image
from app.numtheory.angles import RationalAngle, RationalCosine
from app.numtheory.corollary import QuadrupleInstance, TriangleInstance, quadruple_verdict, triangle_verdict
from app.numtheory.niven import cosine_is_exception, niven_classify
from app.schema import to_fraction
from app.states.bell import bell_pair
from app.states.multiqubit import kqubit_build
from app.states.qubit import bloch_state
from app.states.skeleton import SkeletonPoint


# Strings longer than this are summarised, not printed
TEXT_LIMIT = 4096


def string_text(s: BitString) -> Optional[str]:
    return codec.to_text(s) if s.length <= TEXT_LIMIT else None


def _image(s: BitString):
    found = is_unitary_image(s)
    return list(found) if found is not None else None


class QubitInspection(BaseExperiment):
    name: str = "qubit"
    description: str = "Build B(theta, phi) for a skeleton point and report its ensemble statistics."

    def execute(self, m: int = 0, phase: int = 0, N: Optional[int] = None, n_X: Optional[int] = None, seed: int = 0, **kwargs) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        pt = SkeletonPoint(m=m, n=phase, params=params)
        state = bloch_state(pt)
        stats = ensemble_stats(state)
        return self.record(
            seed=seed,
            config={**params_echo(params), "m": m, "phase": phase},
            statistics={
                **stats.model_dump(),
                "cos_theta": pt.cosine,
                "phi_turns": pt.phase_turns,
                "correlation_with_unit": correlation(state, BitString.unit(params)),
                "string": string_text(state),
            },
            headline="minus_fraction",
        )


class KqubitInspection(BaseExperiment):
    name: str = "kqubit"
    description: str = "Build a K-qubit state from a pre-order parameter tree."

    def execute(
        self,
        K: int = 2,
        tree: Optional[Sequence[Tuple[int, int]]] = None,
        N: Optional[int] = None,
        n_X: Optional[int] = None,
        seed: int = 0,
        save: Optional[str] = None,
        **kwargs,
    ) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        if tree is None:
            rng = np.random.default_rng(seed)
            tree = [
                (int(rng.integers(2 * params.N + 1)), int(rng.integers(params.p)))
                for _ in range(2**K - 1)
            ]
        state = kqubit_build(K, [tuple(pair) for pair in tree], params)
        if save:
            state.save(save)
        return self.record(
            seed=seed,
            config={**params_echo(params), "K": K, "tree": state.tree},
            statistics={
                "string_length": state.string_length,
                "degrees_of_freedom": state.degrees_of_freedom,
                "row_minus_fractions": [ensemble_stats(s).minus_fraction for s in state.strings],
                "rows": [string_text(s) for s in state.strings],
            },
            headline="degrees_of_freedom",
        )


class BellInspection(BaseExperiment):
    name: str = "bell"
    description: str = "Build the Bell pair for (m_a, m_b) and check its correlation law."

    def execute(self, m_a: int = 0, m_b: int = 0, N: Optional[int] = None, n_X: Optional[int] = None, seed: int = 0, **kwargs) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        pair = bell_pair(m_a, m_b, params)
        expected = Fraction(abs(m_b - m_a), params.N) - 1
        value = pair.correlation
        return self.record(
            seed=seed,
            config={**params_echo(params), "m_a": m_a, "m_b": m_b},
            statistics={
                "correlation": value,
                "expected": expected,
                "minus_fraction_a": ensemble_stats(pair.B_a).minus_fraction,
                "minus_fraction_b": ensemble_stats(pair.B_b).minus_fraction,
            },
            verdicts={"law_holds": value == expected},
            headline="correlation",
        )


class NivenInspection(BaseExperiment):
    name: str = "niven"
    description: str = "Classify the cosine of a rational angle."

    def execute(self, angle: str = "0", seed: int = 0, **kwargs) -> ExperimentRecord:
        a = RationalAngle(turns=to_fraction(angle))
        verdict = niven_classify(a)
        statistics = {"turns": a.turns, "denominator": a.denominator}
        if verdict.value is not None:
            statistics["exception_cosine"] = cosine_is_exception(verdict.value)
        return self.record(
            seed=seed,
            config={"angle": a.turns},
            statistics=statistics,
            verdicts={"cosine": verdict},
            headline="denominator",
        )


class TriangleInspection(BaseExperiment):
    name: str = "triangle"
    description: str = "Decide the third side cosine of a triangle with a rational vertex angle."

    def execute(self, r_ab: str = "3/5", r_bc: str = "4/5", phi_b: str = "1/7", seed: int = 0, **kwargs) -> ExperimentRecord:
        t = TriangleInstance(
            r_ab=RationalCosine(value=to_fraction(r_ab)),
            r_bc=RationalCosine(value=to_fraction(r_bc)),
            phi_b=RationalAngle(turns=to_fraction(phi_b)),
        )
        return self.record(
            seed=seed,
            config=t,
            statistics={"nondegenerate": t.nondegenerate},
            verdicts={"cos_ac": triangle_verdict(t)},
        )


class QuadrupleInspection(BaseExperiment):
    name: str = "quadruple"
    description: str = "Decide cos(x1 y1) given three rational setting cosines and two vertex angles."

    def execute(
        self,
        r00: str = "3/5",
        r01: str = "5/13",
        r10: str = "8/17",
        phi0: str = "1/7",
        phi1: str = "1/11",
        independent: bool = True,
        seed: int = 0,
        **kwargs,
    ) -> ExperimentRecord:
        q = QuadrupleInstance(
            r_x0y0=RationalCosine(value=to_fraction(r00)),
            r_x0y1=RationalCosine(value=to_fraction(r01)),
            r_x1y0=RationalCosine(value=to_fraction(r10)),
            phi_x0=RationalAngle(turns=to_fraction(phi0)),
            phi_x1=RationalAngle(turns=to_fraction(phi1)),
            independent=independent,
        )
        return self.record(
            seed=seed,
            config=q,
            statistics={"nondegenerate": q.nondegenerate},
            verdicts={"cos_x1y1": quadruple_verdict(q)},
        )


class EvolveInspection(BaseExperiment):
    name: str = "evolve"
    description: str = "Evolve a string through a unitary program and undo it."

    def execute(
        self,
        program: str = "[]",
        start: Optional[str] = None,
        N: Optional[int] = None,
        n_X: Optional[int] = None,
        seed: int = 0,
        **kwargs,
    ) -> ExperimentRecord:
        prog = UnitaryProgram.from_json(program)
        if start is not None:
            initial = codec.from_text(start)
            params = initial.params
        else:
            params = resolve_params(N, n_X)
            initial = BitString.unit(params)
        end = evolve(prog, initial)
        restored = invert(prog, end)
        return self.record(
            seed=seed,
            config={**params_echo(params), "program": [list(s) for s in prog.steps]},
            statistics={
                "steps": len(prog),
                "end": string_text(end),
                "end_image": _image(end) if start is None else None,
                "correlation_with_start": correlation(end, initial),
            },
            verdicts={"round_trip": restored == initial},
            headline="correlation_with_start",
        )


class MeasureInspection(BaseExperiment):
    name: str = "measure"
    description: str = "Measure a single-qubit ensemble as seeded disorder."

    def execute(self, m: int = 0, phase: int = 0, N: Optional[int] = None, n_X: Optional[int] = None, seed: int = 0, **kwargs) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        state = bloch_state(SkeletonPoint(m=m, n=phase, params=params))
        outcome = measure_cluster(state, seed)
        image = _image(outcome.disordered)
        return self.record(
            seed=seed,
            config={**params_echo(params), "m": m, "phase": phase},
            statistics={
                **outcome.to_dict(),
                "before": _image(state),
                "after": image,
            },
            verdicts={"still_ordered": image is not None},
        )


class PadicInspection(BaseExperiment):
    name: str = "padic"
    description: str = "p-adic labels and distance between two trajectory indices."

    def execute(
        self,
        i: int = 0,
        j: int = 1,
        depth: int = 6,
        base: Optional[int] = None,
        N: Optional[int] = None,
        n_X: Optional[int] = None,
        seed: int = 0,
        **kwargs,
    ) -> ExperimentRecord:
        params = resolve_params(N, n_X)
        if depth < 1:
            raise DomainError(f"depth must be positive, got {depth}")
        flags = {"require_prime": config.padic.require_prime, "pythagorean": config.padic.pythagorean}
        u = position_label(i, params, depth, base, **flags)
        v = position_label(j, params, depth, base, **flags)
        distance = padic_distance(u, v)
        return self.record(
            seed=seed,
            config={**params_echo(params), "i": i, "j": j, "depth": depth, "base": u.base},
            statistics={
                "u": u.digits,
                "v": v.digits,
                "k": distance.k,
                "distance": distance.value,
                "valuation": padic_valuation(i - j, u.base) if i != j else None,
            },
            headline="distance",
        )
