"""WFG1-WFG9 built from the WFG toolkit primitives.

Working parameters z_i lie in [0, 2i]. Each problem normalizes them to [0, 1],
applies its chain of transformations down to M values t_1..t_M, then maps
the degenerate-aware position values through a shape function:

    f_m = x_M + 2m * h_m(x_1, ..., x_{M-1})

All primitives operate column-wise on (batch, n) arrays.
"""

from __future__ import annotations

import numpy as np

from moeadld.problems.base import Problem

HALF_PI = np.pi / 2


def _to_01(y: np.ndarray) -> np.ndarray:
    return np.clip(y, 0.0, 1.0)


# -- bias transformations ---------------------------------------------------


def b_poly(y: np.ndarray, alpha: float) -> np.ndarray:
    return _to_01(y**alpha)


def b_flat(y: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    t1 = np.minimum(0.0, np.floor(y - b)) * a * (b - y) / b
    t2 = np.minimum(0.0, np.floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c)
    return _to_01(a + t1 - t2)


def b_param(y: np.ndarray, u: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    v = a - (1.0 - 2.0 * u) * np.abs(np.floor(0.5 - u) + a)
    return _to_01(y ** (b + (c - b) * v))


# -- shift transformations --------------------------------------------------


def s_linear(y: np.ndarray, a: float) -> np.ndarray:
    return _to_01(np.abs(y - a) / np.abs(np.floor(a - y) + a))


def s_decept(y: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    t1 = np.floor(y - a + b) * (1.0 - c + (a - b) / b) / (a - b)
    t2 = np.floor(a + b - y) * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b)
    return _to_01(1.0 + (np.abs(y - a) - b) * (t1 + t2 + 1.0 / b))


def s_multi(y: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    tmp1 = np.abs(y - c) / (2.0 * (np.floor(c - y) + c))
    tmp2 = (4.0 * a + 2.0) * np.pi * (0.5 - tmp1)
    return _to_01((1.0 + np.cos(tmp2) + 4.0 * b * tmp1**2) / (b + 2.0))


# -- reductions (over the last axis) ----------------------------------------


def r_sum(y: np.ndarray, w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    return _to_01(y @ w / w.sum())


def r_nonsep(y: np.ndarray, a: int) -> np.ndarray:
    size = y.shape[1]
    total = np.zeros(len(y))
    for j in range(size):
        total += y[:, j]
        for k in range(a - 1):
            total += np.abs(y[:, j] - y[:, (1 + j + k) % size])
    half = int(np.ceil(a / 2.0))
    return _to_01(total / ((size / a) * half * (1.0 + 2.0 * a - 2.0 * half)))


# -- shape functions --------------------------------------------------------


def _concave(x: np.ndarray) -> np.ndarray:
    n, m1 = x.shape
    sin = np.sin(x * HALF_PI)
    cos = np.cos(x * HALF_PI)
    h = np.empty((n, m1 + 1))
    for m in range(m1 + 1):
        v = np.prod(sin[:, : m1 - m], axis=1)
        if m > 0:
            v = v * cos[:, m1 - m]
        h[:, m] = v
    return h


def _convex(x: np.ndarray) -> np.ndarray:
    n, m1 = x.shape
    one_minus_cos = 1.0 - np.cos(x * HALF_PI)
    one_minus_sin = 1.0 - np.sin(x * HALF_PI)
    h = np.empty((n, m1 + 1))
    for m in range(m1 + 1):
        v = np.prod(one_minus_cos[:, : m1 - m], axis=1)
        if m > 0:
            v = v * one_minus_sin[:, m1 - m]
        h[:, m] = v
    return h


def _linear(x: np.ndarray) -> np.ndarray:
    n, m1 = x.shape
    h = np.empty((n, m1 + 1))
    for m in range(m1 + 1):
        v = np.prod(x[:, : m1 - m], axis=1)
        if m > 0:
            v = v * (1.0 - x[:, m1 - m])
        h[:, m] = v
    return h


def _mixed(x1: np.ndarray, alpha: float, a: float) -> np.ndarray:
    tmp = 2.0 * a * np.pi
    return _to_01((1.0 - x1 - np.cos(tmp * x1 + HALF_PI) / tmp) ** alpha)


def _disconnected(x1: np.ndarray, alpha: float, beta: float, a: float) -> np.ndarray:
    return _to_01(1.0 - x1**alpha * np.cos(a * x1**beta * np.pi) ** 2)


# -- problems ---------------------------------------------------------------


class WFG(Problem):
    """Shared machinery: bounds, position grouping and the final mapping."""

    name = "WFG"
    degenerate = False

    def __init__(self, n_obj: int, k: int | None = None, l: int | None = None) -> None:  # noqa: E741
        self.k = 2 * (n_obj - 1) if k is None else k
        self.l = 20 if l is None else l
        if self.k % (n_obj - 1):
            raise ValueError("position parameter count k must be divisible by M - 1")
        n_var = self.k + self.l
        super().__init__(n_obj, n_var, np.zeros(n_var), 2.0 * np.arange(1, n_var + 1))
        self.scales = 2.0 * np.arange(1, n_obj + 1)

    def hv_reference_point(self) -> np.ndarray:
        return 2.0 * np.arange(1, self.n_obj + 1) + 1.0

    def _position_groups(self) -> list[slice]:
        gap = self.k // (self.n_obj - 1)
        return [slice(i * gap, (i + 1) * gap) for i in range(self.n_obj - 1)]

    def _weighted_groups(self, y: np.ndarray, weights: np.ndarray | None = None) -> np.ndarray:
        """r_sum over each position group, then over all distance parameters."""
        if weights is None:
            weights = np.ones(y.shape[1])
        cols = [r_sum(y[:, g], weights[g]) for g in self._position_groups()]
        cols.append(r_sum(y[:, self.k :], weights[self.k :]))
        return np.column_stack(cols)

    def _nonsep_groups(self, y: np.ndarray) -> np.ndarray:
        gap = self.k // (self.n_obj - 1)
        cols = [r_nonsep(y[:, g], gap) for g in self._position_groups()]
        cols.append(r_nonsep(y[:, self.k :], y.shape[1] - self.k))
        return np.column_stack(cols)

    def _finish(self, t: np.ndarray, shape: np.ndarray) -> np.ndarray:
        return t[:, -1:] + self.scales * shape

    def _positions(self, t: np.ndarray) -> np.ndarray:
        a = np.ones(self.n_obj - 1)
        if self.degenerate:
            a[1:] = 0.0
        return np.maximum(t[:, -1:], a) * (t[:, :-1] - 0.5) + 0.5

    def _objectives(self, z: np.ndarray) -> np.ndarray:
        t = self._transform(z / self.upper)
        return self._finish(t, self._shape(self._positions(t)))

    def _transform(self, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _shape(self, x: np.ndarray) -> np.ndarray:
        return _concave(x)


class WFG1(WFG):
    name = "WFG1"

    def _transform(self, y):
        k = self.k
        y = y.copy()
        y[:, k:] = s_linear(y[:, k:], 0.35)
        y[:, k:] = b_flat(y[:, k:], 0.8, 0.75, 0.85)
        y = b_poly(y, 0.02)
        return self._weighted_groups(y, 2.0 * np.arange(1, self.n_var + 1))

    def _shape(self, x):
        h = _convex(x)
        h[:, -1] = _mixed(x[:, 0], 1.0, 5.0)
        return h


class WFG2(WFG):
    name = "WFG2"

    def __init__(self, n_obj: int, k: int | None = None, l: int | None = None) -> None:  # noqa: E741
        super().__init__(n_obj, k, l)
        if self.l % 2:
            raise ValueError(f"{self.name} needs an even number of distance parameters")

    def _transform(self, y):
        k = self.k
        y = y.copy()
        y[:, k:] = s_linear(y[:, k:], 0.35)
        pairs = [r_nonsep(y[:, k + 2 * i : k + 2 * i + 2], 2) for i in range(self.l // 2)]
        y = np.column_stack([y[:, :k], *pairs])
        cols = [r_sum(y[:, g], np.ones(g.stop - g.start)) for g in self._position_groups()]
        cols.append(r_sum(y[:, k:], np.ones(y.shape[1] - k)))
        return np.column_stack(cols)

    def _shape(self, x):
        h = _convex(x)
        h[:, -1] = _disconnected(x[:, 0], 1.0, 1.0, 5.0)
        return h


class WFG3(WFG2):
    """Linear, degenerate front: position values collapse via A = (1, 0, ..., 0)."""

    name = "WFG3"
    degenerate = True

    def _shape(self, x):
        return _linear(x)


class WFG4(WFG):
    name = "WFG4"

    def _transform(self, y):
        return self._weighted_groups(s_multi(y, 30.0, 10.0, 0.35))


class WFG5(WFG):
    name = "WFG5"

    def _transform(self, y):
        return self._weighted_groups(s_decept(y, 0.35, 0.001, 0.05))


class WFG6(WFG):
    name = "WFG6"

    def _transform(self, y):
        k = self.k
        y = y.copy()
        y[:, k:] = s_linear(y[:, k:], 0.35)
        return self._nonsep_groups(y)


def _tail_means(y: np.ndarray) -> np.ndarray:
    """Column i holds the mean of y[:, i+1:] (0 for the last column)."""
    n = y.shape[1]
    suffix = np.cumsum(y[:, ::-1], axis=1)[:, ::-1]
    out = np.zeros_like(y)
    out[:, :-1] = suffix[:, 1:] / np.arange(n - 1, 0, -1)
    return _to_01(out)


def _head_means(y: np.ndarray) -> np.ndarray:
    """Column i holds the mean of y[:, :i] (0 for the first column)."""
    prefix = np.cumsum(y, axis=1)
    out = np.zeros_like(y)
    out[:, 1:] = prefix[:, :-1] / np.arange(1, y.shape[1])
    return _to_01(out)


_PARAM_A = 0.98 / 49.98


class WFG7(WFG):
    name = "WFG7"

    def _transform(self, y):
        k = self.k
        y = y.copy()
        y[:, :k] = b_param(y[:, :k], _tail_means(y)[:, :k], _PARAM_A, 0.02, 50.0)
        y[:, k:] = s_linear(y[:, k:], 0.35)
        return self._weighted_groups(y)


class WFG8(WFG):
    name = "WFG8"

    def _transform(self, y):
        k = self.k
        y = y.copy()
        y[:, k:] = b_param(y[:, k:], _head_means(y)[:, k:], _PARAM_A, 0.02, 50.0)
        y[:, k:] = s_linear(y[:, k:], 0.35)
        return self._weighted_groups(y)


class WFG9(WFG):
    name = "WFG9"

    def _transform(self, y):
        k = self.k
        y = y.copy()
        y[:, :-1] = b_param(y[:, :-1], _tail_means(y)[:, :-1], _PARAM_A, 0.02, 50.0)
        y[:, :k] = s_decept(y[:, :k], 0.35, 0.001, 0.05)
        y[:, k:] = s_multi(y[:, k:], 30.0, 95.0, 0.35)
        return self._nonsep_groups(y)
