"""DTLZ1-DTLZ4 in their canonical forms.

Decision vectors have n = M + k - 1 variables in [0, 1]. The first M - 1
variables are position parameters, the remaining k drive the distance
function g.
"""

from __future__ import annotations

import numpy as np

from moeadld.problems.base import Problem


def _g_rastrigin(xm: np.ndarray) -> np.ndarray:
    k = xm.shape[1]
    return 100.0 * (k + np.sum((xm - 0.5) ** 2 - np.cos(20.0 * np.pi * (xm - 0.5)), axis=1))


def _g_sphere(xm: np.ndarray) -> np.ndarray:
    return np.sum((xm - 0.5) ** 2, axis=1)


def _linear_shape(pos: np.ndarray, g: np.ndarray) -> np.ndarray:
    n, m1 = pos.shape
    f = np.empty((n, m1 + 1))
    scale = 0.5 * (1.0 + g)
    for i in range(m1 + 1):
        # f_i = 0.5 (1+g) x_1 ... x_{M-1-i} (1 - x_{M-i})
        v = scale * np.prod(pos[:, : m1 - i], axis=1)
        if i > 0:
            v = v * (1.0 - pos[:, m1 - i])
        f[:, i] = v
    return f


def _spherical_shape(pos: np.ndarray, g: np.ndarray) -> np.ndarray:
    n, m1 = pos.shape
    theta = pos * (np.pi / 2)
    cos = np.cos(theta)
    sin = np.sin(theta)
    f = np.empty((n, m1 + 1))
    scale = 1.0 + g
    for i in range(m1 + 1):
        v = scale * np.prod(cos[:, : m1 - i], axis=1)
        if i > 0:
            v = v * sin[:, m1 - i]
        f[:, i] = v
    return f


class DTLZ(Problem):
    name = "DTLZ"
    default_k = 10

    def __init__(self, n_obj: int, k: int | None = None) -> None:
        self.k = self.default_k if k is None else k
        n_var = n_obj + self.k - 1
        super().__init__(n_obj, n_var, np.zeros(n_var), np.ones(n_var))

    def _split(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return x[:, : self.n_obj - 1], x[:, self.n_obj - 1 :]

    def hv_reference_point(self) -> np.ndarray:
        return np.full(self.n_obj, 2.0)

    def reference_front(self, weights: np.ndarray) -> np.ndarray:
        """Intersections of the weight directions with the unit sphere."""
        w = _check_weights(weights, self.n_obj)
        return w / np.linalg.norm(w, axis=1, keepdims=True)


class DTLZ1(DTLZ):
    """Linear front sum(f) = 0.5 with 11^k - 1 local fronts."""

    name = "DTLZ1"
    default_k = 5

    def _objectives(self, x: np.ndarray) -> np.ndarray:
        pos, dist = self._split(x)
        return _linear_shape(pos, _g_rastrigin(dist))

    def hv_reference_point(self) -> np.ndarray:
        return np.ones(self.n_obj)

    def reference_front(self, weights: np.ndarray) -> np.ndarray:
        w = _check_weights(weights, self.n_obj)
        return 0.5 * w / np.sum(w, axis=1, keepdims=True)


class DTLZ2(DTLZ):
    name = "DTLZ2"

    def _objectives(self, x: np.ndarray) -> np.ndarray:
        pos, dist = self._split(x)
        return _spherical_shape(pos, _g_sphere(dist))


class DTLZ3(DTLZ):
    """DTLZ2's spherical front with the multimodal DTLZ1 distance function."""

    name = "DTLZ3"

    def _objectives(self, x: np.ndarray) -> np.ndarray:
        pos, dist = self._split(x)
        return _spherical_shape(pos, _g_rastrigin(dist))


class DTLZ4(DTLZ):
    """DTLZ2 with position variables raised to ``alpha`` (biased density)."""

    name = "DTLZ4"

    def __init__(self, n_obj: int, k: int | None = None, alpha: float = 100.0) -> None:
        super().__init__(n_obj, k)
        self.alpha = alpha

    def _objectives(self, x: np.ndarray) -> np.ndarray:
        pos, dist = self._split(x)
        return _spherical_shape(pos**self.alpha, _g_sphere(dist))


def _check_weights(weights: np.ndarray, n_obj: int) -> np.ndarray:
    w = np.atleast_2d(np.asarray(weights, dtype=float))
    if w.shape[1] != n_obj:
        raise ValueError(f"weights have {w.shape[1]} components, problem has {n_obj} objectives")
    return w
