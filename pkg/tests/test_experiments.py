import asyncio
import json
import time
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from app.bitcore.bitstring import EnsembleParams
from app.bitcore.statistics import correlation
from app.exceptions import ConfigError, NoCandidateError
from app.experiments import (
    ChshRun,
    ExperimentFailure,
    GhzConflict,
    MzComplementarity,
    ScaleEstimates,
    SgNoncommutativity,
    SiCensus,
    UncertaintyHarness,
    chsh_correlations,
    default_collection,
    uncertainty_sweep,
)
from app.experiments.base import ExperimentRecord
from app.experiments.chsh import DEFAULT_ALICE, DEFAULT_BOB, TSIRELSON, s_value
from app.experiments.census import default_disks, exact_pairs
from app.experiments.scale import floor_log2, k_max
from app.numtheory.angles import RationalAngle
from app.states.bell import bell_pair
from app.states.sampling import EpsilonDisk, SettingConstraint, enumerate_candidates
from app.states.skeleton import nearest_point
from app.utils.seeding import derive_seeds


SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "schema" / "experiment_record.schema.json").read_text()
)

SMALL_INPUTS = {
    "qubit": {"N": 4, "m": 1, "phase": 2},
    "kqubit": {"N": 2, "K": 2, "seed": 3},
    "bell": {"N": 4, "m_a": 1, "m_b": 3},
    "chsh": {"N": 16},
    "si-census": {"N": 40, "max_candidates": 200},
    "mz": {"N": 100},
    "sg": {"N": 100},
    "uncertainty": {"N": 10, "m": 2},
    "ghz": {"phi": "1/5"},
    "niven": {"angle": "1/5"},
    "triangle": {},
    "quadruple": {},
    "evolve": {"N": 2, "program": "[[1, 2]]"},
    "measure": {"N": 4, "m": 3, "seed": 9},
    "padic": {"N": 1, "n_X": 1},
    "scale": {"max_length": "1e62", "N": 1},
}


def turns(*values):
    return [RationalAngle(turns=v) for v in values]


# records and collection


def test_every_experiment_is_registered():
    assert set(default_collection().names()) == set(SMALL_INPUTS)


@pytest.mark.parametrize("name", sorted(SMALL_INPUTS))
def test_records_match_published_schema(name):
    record = default_collection().execute(name=name, experiment_input=SMALL_INPUTS[name])
    assert record, record.error
    jsonschema.validate(json.loads(record.to_json()), SCHEMA)
    jsonschema.validate(record.to_dict(timing=True), SCHEMA)


def test_canonical_json_is_reproducible():
    collection = default_collection()
    first = collection.execute(name="sg", experiment_input={"N": 100, "seed": 5})
    second = collection.execute(name="sg", experiment_input={"N": 100, "seed": 5})
    assert first.wall_time is not None
    assert first.to_json() == second.to_json()
    assert "wall_time" not in first.to_json()
    assert "wall_time" in first.to_json(timing=True)


def test_record_renderings():
    record = ExperimentRecord(
        experiment="demo",
        seed=1,
        config={"N": 3, "ratio": Fraction(1, 3)},
        statistics={"counts": {"a": 1}, "values": [1, 2]},
        headline="counts",
    )
    assert record.config["ratio"] == "1/3"
    assert record.to_csv().splitlines()[0] == "experiment,seed,config.N,config.ratio,statistics.counts.a,statistics.values"
    assert "config.ratio: 1/3" in record.to_text()
    assert record.headline_value() == {"a": 1}
    assert record.replace(seed=2).seed == 2


def test_verdict_failures_become_failure_records():
    record = default_collection().execute(
        name="mz", experiment_input={"N": 10, "phi": "0", "mode": "which-way", "epsilon": "1/1000"}
    )
    assert isinstance(record, ExperimentFailure)
    assert not record
    assert record.error.startswith("NoCandidateError")


def test_usage_errors_propagate():
    with pytest.raises(ConfigError):
        default_collection().execute(name="chsh", experiment_input={"N": 4})
    with pytest.raises(KeyError):
        default_collection().execute(name="nope")


def test_async_execution():
    record = asyncio.run(
        default_collection().execute_async(name="niven", experiment_input={"angle": "1/6"})
    )
    assert record.verdicts["cosine"] == {"status": "RATIONAL", "value": "1/2"}


# chsh


def test_chsh_converges_to_tsirelson():
    record = ChshRun()(N=1000, seed=42)
    assert record.statistics["S_minus_tsirelson"] <= 5e-3
    assert record.verdicts["exceeds_classical"]
    assert record.verdicts["within_grid_bound"]
    assert record.headline == "S_minus_tsirelson"


def test_chsh_at_N2_is_classical():
    params = EnsembleParams(N=2)
    E = chsh_correlations(turns(*DEFAULT_ALICE), turns(*DEFAULT_BOB), params)
    assert {abs(e) for e in E.values()} == {Fraction(1, 2)}
    assert s_value(E) == 2


@pytest.mark.parametrize(
    "alice, bob",
    [(("0", "0"), DEFAULT_BOB), (("0", "1/1000"), DEFAULT_BOB), (("0",), DEFAULT_BOB)],
)
def test_chsh_rejects_bad_settings(alice, bob):
    with pytest.raises(ConfigError):
        ChshRun()(N=8, alice=alice, bob=bob)


def test_chsh_needs_N8():
    with pytest.raises(ConfigError):
        ChshRun()(N=7)


@pytest.mark.slow
def test_correlation_kernel_at_a_million():
    params = EnsembleParams(N=10**6)
    pairs = [bell_pair(0, m, params) for m in (292893, 292893, 292893, 1707107)]
    start = time.perf_counter()
    values = [correlation(p.B_a, p.B_b) for p in pairs]
    assert time.perf_counter() - start < 1.0
    assert abs(float(-values[0] * 3 + values[3]) - TSIRELSON) < 1e-5


# si census


def test_census_counterfactual_count_vanishes():
    record = SiCensus()(N=200, seed=0, max_candidates=10_000)
    # quarter-turn pairs are exact for every cosine; the shared meridian only for 4/5 with 3/5
    assert record.statistics["candidates"] == [85, 85, 85, 85]
    assert record.statistics["counts"] == {"00": 425, "01": 17, "10": 425, "11": 0}
    assert record.statistics["shared_settings"] == 17
    assert record.statistics["exact_fourth_pairs"] == 0
    assert record.statistics["census"]["IRRATIONAL"] == record.statistics["decided"] == 425
    assert record.config["vertex_angles"] == "geometry"
    assert record.verdicts["si_violated"]
    assert not record.verdicts["exception_flagged"]


def test_census_counts_only_exact_pairs():
    params = EnsembleParams(N=200)
    x0, x1, y0, y1 = (
        enumerate_candidates(d, SettingConstraint.rational_cosine())
        for d in default_disks(params, Fraction(1, 100))
    )
    pairs = exact_pairs(x0, y1)
    assert len(pairs) == 17
    for (i, j), r in pairs.items():
        assert (x0[i].cosine, y1[j].cosine, x0[i].n) == (Fraction(4, 5), Fraction(3, 5), y1[j].n)
        assert r == Fraction(24, 25)
    assert exact_pairs(x1, y1) == {}


def test_census_exception_pool_is_flagged():
    record = SiCensus()(N=200, seed=1, max_candidates=300, exception_pool=True)
    assert record.config["vertex_angles"] == "pool"
    assert record.statistics["counts"]["11"] == 300
    assert record.verdicts["exception_flagged"]
    assert not record.verdicts["si_violated"]


def test_census_three_disk_variant():
    record = SiCensus()(N=200, seed=2, max_candidates=500, variant="bell")
    assert record.statistics["counts"] == {"ab": 425, "bc": 425, "ac": 0}
    assert record.statistics["census"]["IRRATIONAL"] == 500
    assert record.statistics["exact_fourth_pairs"] == 0
    assert record.verdicts["si_violated"]


def test_census_without_exact_combinations():
    params = EnsembleParams(N=200)
    eps = Fraction(1, 100)
    disks = [
        EpsilonDisk(nominal=nearest_point(Fraction(0), t, params), epsilon=eps)
        for t in (Fraction(0), Fraction(1, 4), Fraction(1, 8), Fraction(7, 8))
    ]
    with pytest.raises(NoCandidateError):
        SiCensus()(N=200, disks=disks)


def test_census_rejects_overlapping_disks():
    params = EnsembleParams(N=200)
    disk = default_disks(params, Fraction(1, 100))[0]
    with pytest.raises(ConfigError):
        SiCensus()(N=200, disks=[disk] * 4)


# mz


def test_mz_interference_at_zero_phase():
    record = MzComplementarity()(phi="0", N=100, seed=0)
    m = record.statistics["exact_setting"]["m"]
    assert Fraction(record.statistics["minus_fraction"]) == Fraction(m, 200)
    assert Fraction(record.statistics["which_way_minus_fraction"]) == Fraction(1, 2)
    assert record.verdicts["counterfactual"]["status"] == "INADMISSIBLE"


def test_mz_which_way_generic_phase():
    record = MzComplementarity()(phi="1/5", N=100, seed=4, mode="which-way")
    assert record.verdicts["realised"]["status"] == "ADMISSIBLE"
    assert record.verdicts["counterfactual"]["status"] == "INADMISSIBLE"


def test_mz_which_way_exception_phase():
    record = MzComplementarity()(phi="1/4", N=100, mode="which-way", epsilon="1/1000")
    assert record.statistics["exact_setting"]["n"] == 100
    assert record.verdicts["counterfactual"]["status"] == "EXCEPTION"


def test_mz_reports_null_removal():
    assert MzComplementarity()(phi="1/4", N=10, n_X=1).statistics["exceptions_removed"]
    assert not MzComplementarity()(phi="1/4", N=10).statistics["exceptions_removed"]


def test_mz_rejects_unknown_mode():
    with pytest.raises(ConfigError):
        MzComplementarity()(mode="both")


# sg


def test_sg_swapped_order_inadmissible():
    record = SgNoncommutativity()(N=100, seed=0, runs=5)
    assert record.verdicts["triangle"]["status"] == "IRRATIONAL"
    assert record.verdicts["swapped_order"]["status"] == "INADMISSIBLE"
    assert sum(record.statistics["counts"].values()) == 5
    assert record.statistics["inadmissible_runs"] >= 1
    first = record.statistics["first_run"]
    assert first["r_ab"] is not None and first["r_bc"] is not None


def test_sg_rejects_bad_disks():
    with pytest.raises(ConfigError):
        SgNoncommutativity()(disks=["1/2:0", "0:1/4"])
    with pytest.raises(ConfigError):
        SgNoncommutativity()(disks=["1/2:0", "1/2:0", "0:1/2"])
    with pytest.raises(ConfigError):
        SgNoncommutativity()(disks=["1/2", "1/2:1/4", "0:1/2"])


# uncertainty


def test_uncertainty_example():
    record = UncertaintyHarness()(N=10, m=2, phase=0, hbar_units=True)
    assert record.statistics["mean_z"] == "4/5"
    assert record.verdicts["nominal"]
    assert record.verdicts["exact_grid"]
    assert record.statistics["continuum_margin"] >= 0
    assert record.statistics["hbar_half"]["bound"] == pytest.approx(0.2)


def test_uncertainty_full_sweep_at_N100():
    summary = uncertainty_sweep(EnsembleParams(N=100))
    assert summary.points == 201 * 400
    assert summary.nominal_violations == 0
    assert summary.continuum_min_margin >= -1e-12
    assert UncertaintyHarness()(N=100, sweep=True).verdicts["holds"]


# ghz


@pytest.mark.parametrize(
    "given, status",
    [
        ({"phi": "1/5"}, "CONFLICT"),
        ({"phi": "1/8"}, "EXCEPTION"),
        ({"cos2phi": "3/5"}, "CONFLICT"),
        ({"cos2phi": "1/2"}, "EXCEPTION"),
    ],
)
def test_ghz_joint_measurement(given, status):
    record = GhzConflict()(**given)
    assert record.verdicts["joint_measurement"]["status"] == status
    assert record.statistics["unit_modulus"]


def test_ghz_needs_exactly_one_input():
    with pytest.raises(ConfigError):
        GhzConflict()()
    with pytest.raises(ConfigError):
        GhzConflict()(phi="1/5", cos2phi="1/2")


# scale


def test_k_max_for_the_observable_universe():
    assert floor_log2(Fraction(10**62)) == 205
    assert k_max(Fraction(10**62), Fraction(1)) == 204
    record = ScaleEstimates()(max_length="1e62", N=1)
    assert record.statistics["K_max"] == 204
    assert record.statistics["log2_bound"] == 205


def test_universe_factor_adds_about_eight():
    base = ScaleEstimates()(max_length="1e62", N=1).statistics["K_max"]
    bigger = ScaleEstimates()(max_length="1e62", N=1, universe_factor="250").statistics["K_max"]
    assert bigger - base == 8


@pytest.mark.parametrize("q", [Fraction(1), Fraction(3, 2), Fraction(1, 3), Fraction(2**70 + 1), Fraction(1, 2**40)])
def test_floor_log2_exact(q):
    k = floor_log2(q)
    assert Fraction(2) ** k <= q < Fraction(2) ** (k + 1)


def test_ensemble_size_and_classical_limit():
    record = ScaleEstimates()(energy_ratio="1e-26")
    assert record.statistics["log10_N"] == pytest.approx(26)
    assert not record.statistics["classical"]
    assert ScaleEstimates()(mass_ug="30").verdicts["classical"]
    assert not ScaleEstimates()(mass_ug="10").verdicts["classical"]
    assert ScaleEstimates()(wavelength="1e-5").statistics["N_estimate"] > 1e25


def test_scale_input_errors():
    with pytest.raises(ConfigError):
        ScaleEstimates()()
    with pytest.raises(ConfigError):
        ScaleEstimates()(energy_ratio="1", mass_ug="1")


# inspections


def test_niven_inspection():
    record = default_collection().execute(name="niven", experiment_input={"angle": "1/5"})
    assert record.verdicts["cosine"]["status"] == "IRRATIONAL"


def test_bell_inspection_law():
    record = default_collection().execute(name="bell", experiment_input={"N": 2, "m_a": 0, "m_b": 1})
    assert record.statistics["correlation"] == "-1/2"
    assert record.verdicts["law_holds"]


def test_evolve_inspection_round_trip():
    record = default_collection().execute(
        name="evolve", experiment_input={"N": 3, "program": "[[3, 3], [1, 5]]"}
    )
    assert record.verdicts["round_trip"]
    single = default_collection().execute(name="evolve", experiment_input={"N": 1, "program": "[[1, 1]]"})
    assert single.statistics["end"] == "2+2-"
    assert single.statistics["end_image"] == [1, 1]


def test_kqubit_inspection_saves(tmp_path):
    record = default_collection().execute(
        name="kqubit", experiment_input={"N": 1, "K": 2, "tree": [[0, 0], [1, 1], [2, 3]], "save": str(tmp_path / "s")}
    )
    assert record.statistics["degrees_of_freedom"] == 6
    assert (tmp_path / "s.bits").exists() and (tmp_path / "s.json").exists()


def test_measure_inspection():
    record = default_collection().execute(name="measure", experiment_input={"N": 4, "m": 4, "seed": 1})
    assert record.statistics["before"] == [4, 0]
    assert record.statistics["seed"] == 1


# seeding


def test_derived_seeds():
    seeds = derive_seeds(42, 64)
    assert seeds == derive_seeds(42, 64)
    assert len(set(seeds)) == 64
    assert all(0 <= s < 2**63 for s in seeds)
    assert derive_seeds(43, 1) != seeds[:1]
