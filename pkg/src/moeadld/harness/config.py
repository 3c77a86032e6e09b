"""Experiment configuration and the default settings tables."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from moeadld.engine import AlgoConfig
from moeadld.operators import VariationConfig
from moeadld.problems import PROBLEMS, get_problem
from moeadld.weights import (
    DEFAULT_DIVISIONS,
    DEFAULT_TAU,
    generate_simplex_lattice,
    generate_two_layer,
)

DTLZ_GENERATIONS: dict[str, dict[int, int]] = {
    "DTLZ1": {3: 400, 5: 600, 8: 750, 10: 1000, 15: 1500},
    "DTLZ2": {3: 250, 5: 350, 8: 500, 10: 750, 15: 1000},
    "DTLZ3": {3: 1000, 5: 1000, 8: 1000, 10: 1500, 15: 2000},
    "DTLZ4": {3: 600, 5: 1000, 8: 1250, 10: 2000, 15: 3000},
}
WFG_GENERATIONS = 3000

# Constrained instances borrow the budget of the problem they extend.
_PARENT = {"C1-DTLZ1": "DTLZ1", "C2-DTLZ2": "DTLZ2", "C3-DTLZ1": "DTLZ1", "C3-DTLZ4": "DTLZ4"}

METRICS = ("igd", "hv")


class ConfigError(ValueError):
    pass


def default_generations(problem: str, n_obj: int) -> int:
    if problem.startswith("WFG"):
        return WFG_GENERATIONS
    row = DTLZ_GENERATIONS.get(_PARENT.get(problem, problem), {})
    if n_obj not in row:
        raise ConfigError(f"no default generation count for {problem} with M={n_obj}")
    return row[n_obj]


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    n_obj: int
    divisions: int
    inner_divisions: int | None = None
    tau: float = DEFAULT_TAU
    runs: int = 20
    generations: int = 250
    seed: int = 0
    metrics: tuple[str, ...] = ("igd",)
    algorithm: AlgoConfig = field(default_factory=AlgoConfig)
    output: str | None = None
    workers: int = 1
    reference_file: str | None = None
    hv_samples: int = 1_000_000

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")
        for m in self.metrics:
            if m not in METRICS:
                raise ConfigError(f"unknown metric {m!r}; expected one of {METRICS}")

    def weight_vectors(self) -> np.ndarray:
        if self.inner_divisions is None:
            return generate_simplex_lattice(self.n_obj, self.divisions)
        return generate_two_layer(self.n_obj, self.divisions, self.inner_divisions, self.tau)

    @property
    def population_size(self) -> int:
        return len(self.weight_vectors())

    def make_problem(self):
        return get_problem(self.problem, self.n_obj)

    def algo_for_seed(self, seed: int) -> AlgoConfig:
        return replace(self.algorithm, seed=seed, generations=self.generations)

    def with_overrides(self, **changes) -> ExperimentConfig:
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["metrics"] = list(self.metrics)
        return data


def resolve_config(data: dict) -> ExperimentConfig:
    """Fill table defaults into a raw config mapping."""
    try:
        name = str(data["problem"]).strip().upper()
        n_obj = int(data.get("M", data.get("m", data.get("n_obj"))))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("config needs 'problem' and 'M'") from exc
    if name not in PROBLEMS:
        raise ConfigError(f"unknown problem {data['problem']!r}")

    layout = data.get("weights") or {}
    d1 = layout.get("d1", layout.get("d"))
    d2 = layout.get("d2")
    if d1 is None:
        if n_obj not in DEFAULT_DIVISIONS:
            raise ConfigError(
                f"M={n_obj} has no default weight layout; set weights.d or weights.d1/d2"
            )
        d1, d2 = DEFAULT_DIVISIONS[n_obj]
    tau = float(layout.get("tau", DEFAULT_TAU))

    generations = data.get("generations")
    if generations is None:
        generations = default_generations(name, n_obj)

    metrics = data.get("metrics")
    if metrics is None:
        metrics = ["hv"] if name.startswith("WFG") else ["igd"]
    if isinstance(metrics, str):
        metrics = [metrics]
    if name.startswith("WFG") and "igd" in metrics and not data.get("reference_file"):
        raise ConfigError(f"{name} has no built-in reference front; igd needs 'reference_file'")

    algo = dict(data.get("algorithm") or {})
    variation = VariationConfig(**algo.pop("variation", {}))
    algo.pop("seed", None)
    algo.pop("generations", None)
    try:
        algorithm = AlgoConfig(variation=variation, **algo)
    except TypeError as exc:
        raise ConfigError(f"bad algorithm settings: {exc}") from exc

    return ExperimentConfig(
        problem=name,
        n_obj=n_obj,
        divisions=int(d1),
        inner_divisions=None if d2 is None else int(d2),
        tau=tau,
        runs=int(data.get("runs", 20)),
        generations=int(generations),
        seed=int(data.get("seed", 0)),
        metrics=tuple(m.lower() for m in metrics),
        algorithm=algorithm,
        output=data.get("output"),
        workers=int(data.get("workers", 1)),
        reference_file=data.get("reference_file"),
        hv_samples=int(data.get("hv_samples", 1_000_000)),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    """Read a JSON experiment file and resolve its defaults."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return resolve_config(data)
