"""Many-objective optimization by decomposition and local dominance."""

from moeadld.engine import AlgoConfig, IdealNadir, Individual, RunRecord, run
from moeadld.operators import VariationConfig
from moeadld.problems import get_problem
from moeadld.weights import WeightSet, default_weights

__version__ = "0.1.0"

__all__ = [
    "AlgoConfig",
    "IdealNadir",
    "Individual",
    "RunRecord",
    "VariationConfig",
    "WeightSet",
    "default_weights",
    "get_problem",
    "run",
]
