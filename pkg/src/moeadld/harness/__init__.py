"""Experiment orchestration: configs, seeded repeated runs and result export."""

from moeadld.harness.config import ConfigError, ExperimentConfig, load_config, resolve_config
from moeadld.harness.experiment import (
    AggregateResult,
    ExperimentError,
    ExperimentResult,
    export_results,
    run_experiment,
)

__all__ = [
    "AggregateResult",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentError",
    "ExperimentResult",
    "export_results",
    "load_config",
    "resolve_config",
    "run_experiment",
]
