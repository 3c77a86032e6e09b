"""Evaluation contract shared by all benchmark problems."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Evaluation:
    """Objective values and signed constraint values for one or more inputs.

    Constraint values follow the ``g(x) >= 0`` convention: negative entries are
    violations. For a batch of k inputs, ``objectives`` has shape (k, M) and
    ``constraints`` has shape (k, J); ``constraints`` has J = 0 columns for
    unconstrained problems.
    """

    objectives: np.ndarray
    constraints: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def violation(self) -> np.ndarray | float:
        return constraint_violation(self.constraints)


def constraint_violation(constraints: np.ndarray) -> np.ndarray | float:
    """Total magnitude of violated inequality constraints ``g >= 0``.

    Works on a single constraint vector (returns a float) or on a (k, J)
    batch (returns shape (k,)). No equality constraints appear in the
    benchmark set, so only the inequality part is summed.
    """
    g = np.asarray(constraints, dtype=float)
    if g.ndim <= 1:
        return float(np.sum(np.where(g < 0.0, -g, 0.0)))
    return np.sum(np.where(g < 0.0, -g, 0.0), axis=-1)


class Problem:
    """Box-bounded minimization problem with an optional constraint set.

    Subclasses implement :meth:`_objectives` (and :meth:`_constraints` when
    constrained) over an (k, n) batch that has already been bounds-checked.
    """

    name: str = "problem"
    n_constraints: int = 0

    def __init__(self, n_obj: int, n_var: int, lower: np.ndarray, upper: np.ndarray) -> None:
        if n_obj < 2:
            raise ValueError(f"{self.name} needs at least 2 objectives, got {n_obj}")
        self.n_obj = n_obj
        self.n_var = n_var
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n_obj={self.n_obj}, n_var={self.n_var})"

    @property
    def constrained(self) -> bool:
        return self.n_constraints > 0

    def evaluate(self, x: np.ndarray) -> Evaluation:
        """Evaluate a single decision vector or a (k, n) batch."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        batch = np.atleast_2d(x)
        if batch.shape[1] != self.n_var:
            raise ValueError(f"{self.name} expects {self.n_var} variables, got {batch.shape[1]}")
        if np.any(batch < self.lower) or np.any(batch > self.upper):
            raise ValueError(f"decision vector outside the bounds of {self.name}")

        f = self._objectives(batch)
        if self.n_constraints:
            g = self._constraints(batch, f)
        else:
            g = np.empty((len(batch), 0))
        if single:
            return Evaluation(f[0], g[0])
        return Evaluation(f, g)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Uniform random decision vectors inside the box."""
        return self.lower + rng.random((size, self.n_var)) * (self.upper - self.lower)

    def hv_reference_point(self) -> np.ndarray:
        raise NotImplementedError

    def reference_front(self, weights: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"no reference front generator for {self.name}")

    def _objectives(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _constraints(self, x: np.ndarray, f: np.ndarray) -> np.ndarray:
        raise NotImplementedError
