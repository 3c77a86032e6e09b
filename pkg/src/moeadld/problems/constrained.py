"""Constrained DTLZ variants: C1-DTLZ1, C2-DTLZ2, C3-DTLZ1 and C3-DTLZ4.

Objectives are those of the parent problem; the added constraints follow the
``c(x) >= 0`` feasibility convention.
"""

from __future__ import annotations

import numpy as np

from moeadld.problems.dtlz import DTLZ1, DTLZ2, DTLZ4, _check_weights


def c1_dtlz1_constraint(f: np.ndarray) -> np.ndarray:
    f = np.atleast_2d(f)
    c = 1.0 - f[:, -1] / 0.6 - np.sum(f[:, :-1], axis=1) / 0.5
    return c[:, None]


def c2_dtlz2_radius(n_obj: int) -> float:
    return 0.4 if n_obj == 3 else 0.5


def c2_dtlz2_constraint(f: np.ndarray, radius: float) -> np.ndarray:
    f = np.atleast_2d(f)
    m = f.shape[1]
    sq = f**2
    # (f_i - 1)^2 + sum_{j != i} f_j^2 == sum_j f_j^2 - 2 f_i + 1
    p = np.min(sq.sum(axis=1, keepdims=True) - 2.0 * f + 1.0, axis=1) - radius**2
    q = np.sum((f - 1.0 / np.sqrt(m)) ** 2, axis=1) - radius**2
    return -np.minimum(p, q)[:, None]


def c3_dtlz1_constraints(f: np.ndarray) -> np.ndarray:
    f = np.atleast_2d(f)
    return f.sum(axis=1, keepdims=True) - f + f / 0.5 - 1.0


def c3_dtlz4_constraints(f: np.ndarray) -> np.ndarray:
    f = np.atleast_2d(f)
    sq = f**2
    return sq.sum(axis=1, keepdims=True) - sq + sq / 4.0 - 1.0


class C1DTLZ1(DTLZ1):
    """DTLZ1 with only a thin band above the linear front left feasible."""

    name = "C1-DTLZ1"
    n_constraints = 1

    def _constraints(self, x, f):
        return c1_dtlz1_constraint(f)


class C2DTLZ2(DTLZ2):
    """DTLZ2 whose feasible front is a set of disconnected caps."""

    name = "C2-DTLZ2"
    n_constraints = 1

    @property
    def radius(self) -> float:
        return c2_dtlz2_radius(self.n_obj)

    def _constraints(self, x, f):
        return c2_dtlz2_constraint(f, self.radius)

    def reference_front(self, weights):
        pts = super().reference_front(weights)
        keep = c2_dtlz2_constraint(pts, self.radius)[:, 0] >= 0.0
        return pts[keep]


class C3DTLZ1(DTLZ1):
    name = "C3-DTLZ1"

    def __init__(self, n_obj: int, k: int | None = None) -> None:
        super().__init__(n_obj, k)
        self.n_constraints = n_obj

    def _constraints(self, x, f):
        return c3_dtlz1_constraints(f)

    def reference_front(self, weights):
        w = _check_weights(weights, self.n_obj)
        t = 1.0 / (w.sum(axis=1, keepdims=True) + w)
        return w * t.max(axis=1, keepdims=True)


class C3DTLZ4(DTLZ4):
    name = "C3-DTLZ4"

    def __init__(self, n_obj: int, k: int | None = None, alpha: float = 100.0) -> None:
        super().__init__(n_obj, k, alpha)
        self.n_constraints = n_obj

    def _constraints(self, x, f):
        return c3_dtlz4_constraints(f)

    def reference_front(self, weights):
        w = _check_weights(weights, self.n_obj)
        sq = w**2
        t = 1.0 / np.sqrt(sq.sum(axis=1, keepdims=True) - sq + sq / 4.0)
        return w * t.max(axis=1, keepdims=True)
