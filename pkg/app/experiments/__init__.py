from app.experiments.base import BaseExperiment, ExperimentFailure, ExperimentRecord
from app.experiments.census import SiCensus, SiCensusConfig, si_census
from app.experiments.chsh import ChshConfig, ChshRun, chsh_correlations, chsh_run
from app.experiments.complementarity import MzComplementarity
from app.experiments.experiment_collection import ExperimentCollection
from app.experiments.ghz import GhzConflict
from app.experiments.inspection import (
    BellInspection,
    EvolveInspection,
    KqubitInspection,
    MeasureInspection,
    NivenInspection,
    PadicInspection,
    QuadrupleInspection,
    QubitInspection,
    TriangleInspection,
)
from app.experiments.noncommutativity import SgNoncommutativity
from app.experiments.scale import ScaleEstimates
from app.experiments.uncertainty import UncertaintyHarness, uncertainty_sweep


def default_collection() -> ExperimentCollection:
    """Every harness and inspection, keyed by its CLI subcommand."""
    return ExperimentCollection(
        QubitInspection(),
        KqubitInspection(),
        BellInspection(),
        ChshRun(),
        SiCensus(),
        MzComplementarity(),
        SgNoncommutativity(),
        UncertaintyHarness(),
        GhzConflict(),
        NivenInspection(),
        TriangleInspection(),
        QuadrupleInspection(),
        EvolveInspection(),
        MeasureInspection(),
        PadicInspection(),
        ScaleEstimates(),
    )


__all__ = [
    "BaseExperiment",
    "BellInspection",
    "ChshConfig",
    "ChshRun",
    "EvolveInspection",
    "ExperimentCollection",
    "ExperimentFailure",
    "ExperimentRecord",
    "GhzConflict",
    "KqubitInspection",
    "MeasureInspection",
    "MzComplementarity",
    "NivenInspection",
    "PadicInspection",
    "QuadrupleInspection",
    "QubitInspection",
    "ScaleEstimates",
    "SgNoncommutativity",
    "SiCensus",
    "SiCensusConfig",
    "TriangleInspection",
    "UncertaintyHarness",
    "chsh_correlations",
    "chsh_run",
    "default_collection",
    "si_census",
    "uncertainty_sweep",
]
