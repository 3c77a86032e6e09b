"""Benchmark problems and their reference fronts."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from moeadld.problems.base import Evaluation, Problem, constraint_violation
from moeadld.problems.constrained import C1DTLZ1, C2DTLZ2, C3DTLZ1, C3DTLZ4
from moeadld.problems.dtlz import DTLZ1, DTLZ2, DTLZ3, DTLZ4
from moeadld.problems.wfg import WFG1, WFG2, WFG3, WFG4, WFG5, WFG6, WFG7, WFG8, WFG9

PROBLEMS: dict[str, type[Problem]] = {
    cls.name: cls
    for cls in (
        DTLZ1, DTLZ2, DTLZ3, DTLZ4,
        WFG1, WFG2, WFG3, WFG4, WFG5, WFG6, WFG7, WFG8, WFG9,
        C1DTLZ1, C2DTLZ2, C3DTLZ1, C3DTLZ4,
    )
}


def get_problem(name: str, n_obj: int) -> Problem:
    """Instantiate a benchmark by name (case-insensitive), e.g. ``"c3-dtlz4"``."""
    key = name.strip().upper()
    if key not in PROBLEMS:
        raise ValueError(f"unknown problem {name!r}; known: {', '.join(PROBLEMS)}")
    return PROBLEMS[key](n_obj)


def pf_reference_points(problem: Problem, weights: np.ndarray) -> np.ndarray:
    """Reference set: one front point per weight direction (filtered for C2-DTLZ2)."""
    return problem.reference_front(weights)


def save_points(points: np.ndarray, path: str | Path) -> None:
    np.savetxt(path, np.atleast_2d(points), fmt="%.17g", delimiter=" ")


def load_points(path: str | Path) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, dtype=float))


__all__ = [
    "PROBLEMS",
    "Evaluation",
    "Problem",
    "constraint_violation",
    "get_problem",
    "load_points",
    "pf_reference_points",
    "save_points",
    "DTLZ1", "DTLZ2", "DTLZ3", "DTLZ4",
    "WFG1", "WFG2", "WFG3", "WFG4", "WFG5", "WFG6", "WFG7", "WFG8", "WFG9",
    "C1DTLZ1", "C2DTLZ2", "C3DTLZ1", "C3DTLZ4",
]
