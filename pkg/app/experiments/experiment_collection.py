"""Collection classes for managing multiple experiments."""
import asyncio
from typing import Any, Dict, List

from app.exceptions import VerdictError
from app.experiments.base import BaseExperiment, ExperimentFailure, ExperimentRecord
from app.logger import logger


class ExperimentCollection:
    """A collection of registered experiments, dispatched by name."""

    def __init__(self, *experiments: BaseExperiment):
        self.experiments = experiments
        self.experiment_map = {e.name: e for e in experiments}

    def __iter__(self):
        return iter(self.experiments)

    def names(self) -> List[str]:
        return list(self.experiment_map)

    def execute(self, *, name: str, experiment_input: Dict[str, Any] = None) -> ExperimentRecord:
        """Run one experiment; verdict-level failures come back as ExperimentFailure records.

        Usage errors propagate to the caller.
        """
        experiment = self.experiment_map.get(name)
        if not experiment:
            raise KeyError(f"Experiment {name} is invalid")
        experiment_input = experiment_input or {}
        try:
            return experiment(**experiment_input)
        except VerdictError as e:
            logger.warning(f"{name} failed: {e.message}")
            return ExperimentFailure(
                experiment=name,
                seed=experiment_input.get("seed", 0),
                config={k: v for k, v in experiment_input.items() if k != "seed"},
                error=f"{type(e).__name__}: {e.message}",
            )

    async def execute_async(self, *, name: str, experiment_input: Dict[str, Any] = None) -> ExperimentRecord:
        """Run an experiment in a worker thread."""
        return await asyncio.to_thread(
            self.execute, name=name, experiment_input=experiment_input
        )

    def get_experiment(self, name: str) -> BaseExperiment:
        return self.experiment_map.get(name)

    def add_experiment(self, experiment: BaseExperiment):
        self.experiments += (experiment,)
        self.experiment_map[experiment.name] = experiment
        return self

    def add_experiments(self, *experiments: BaseExperiment):
        for experiment in experiments:
            self.add_experiment(experiment)
        return self
