"""Weight vector generation and angle-based neighborhoods.

Weight vectors live on the unit simplex. Single-layer sets come from the
simplex lattice (systematic sampling); two-layer sets add a shrunken inner
lattice so that many-objective instances get interior directions without an
explosion in population size.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterator, NamedTuple

import numpy as np

# (D1, D2) per objective count; D2 is None for single-layer sets.
DEFAULT_DIVISIONS: dict[int, tuple[int, int | None]] = {
    3: (12, None),
    5: (6, None),
    8: (3, 2),
    10: (3, 2),
    15: (2, 1),
}

DEFAULT_TAU = 0.5
DEFAULT_NEIGHBORHOOD = 20


def lattice_size(n_obj: int, divisions: int) -> int:
    """Number of lattice points N(D, M) = C(D + M - 1, M - 1)."""
    return comb(divisions + n_obj - 1, n_obj - 1)


def generate_simplex_lattice(n_obj: int, divisions: int) -> np.ndarray:
    """All points of the simplex lattice with ``divisions`` steps per axis.

    Args:
        n_obj: Number of objectives M (>= 2).
        divisions: Number of divisions D (>= 1).

    Returns:
        Array of shape (N(D, M), M). Every component is k/D for an integer k
        and every row sums to one.
    """
    if n_obj < 2:
        raise ValueError(f"need at least 2 objectives, got {n_obj}")
    if divisions < 1:
        raise ValueError(f"divisions must be >= 1, got {divisions}")

    # Stars and bars: choose M-1 bar positions among D+M-1 slots.
    slots = divisions + n_obj - 1
    bars = np.array(list(combinations(range(slots), n_obj - 1)), dtype=np.int64)
    bars = bars.reshape(-1, n_obj - 1)
    edges = np.hstack(
        [
            np.full((len(bars), 1), -1, dtype=np.int64),
            bars,
            np.full((len(bars), 1), slots, dtype=np.int64),
        ]
    )
    counts = np.diff(edges, axis=1) - 1
    return counts / divisions


def generate_two_layer(
    n_obj: int,
    boundary_divisions: int,
    inside_divisions: int,
    tau: float = DEFAULT_TAU,
) -> np.ndarray:
    """Boundary lattice followed by an inner lattice shrunk towards the centroid.

    Inner vectors are mapped by ``v = (1 - tau) / M + tau * w``, which keeps
    them on the simplex.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    outer = generate_simplex_lattice(n_obj, boundary_divisions)
    inner = generate_simplex_lattice(n_obj, inside_divisions)
    inner = (1.0 - tau) / n_obj + tau * inner
    return np.vstack([outer, inner])


def default_weights(n_obj: int) -> np.ndarray:
    """Weight set used for the canonical objective counts 3, 5, 8, 10 and 15."""
    try:
        d1, d2 = DEFAULT_DIVISIONS[n_obj]
    except KeyError:
        raise ValueError(
            f"no default weight layout for M={n_obj}; give divisions explicitly"
        ) from None
    if d2 is None:
        return generate_simplex_lattice(n_obj, d1)
    return generate_two_layer(n_obj, d1, d2)


def angle_between(u: np.ndarray, v: np.ndarray) -> float:
    """Included angle between ``u`` and the direction ``v``, in [0, pi/2].

    Projection length d1 = |u.v| / |v| and perpendicular distance
    d2 = |u - d1 v/|v||; the angle is atan(d2 / d1), with pi/2 when d1 == 0.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    v_norm = np.linalg.norm(v)
    if v_norm == 0.0 or not np.any(u):
        raise ValueError("angle undefined for a zero vector")
    d1 = abs(float(u @ v)) / v_norm
    if d1 == 0.0:
        return float(np.pi / 2)
    d2 = float(np.linalg.norm(u - d1 * v / v_norm))
    return float(np.arctan(d2 / d1))


def angle_matrix(points: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """Angles between every row of ``points`` and every row of ``directions``.

    Returns an array of shape (len(points), len(directions)). A zero point
    gets angle 0 to every direction.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    unit = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    d1 = np.abs(points @ unit.T)
    perp = points[:, None, :] - d1[:, :, None] * unit[None, :, :]
    d2 = np.linalg.norm(perp, axis=2)
    # atan2 yields pi/2 for d1 == 0 and 0 for the all-zero point.
    return np.arctan2(d2, d1)


def neighborhoods(weights: np.ndarray, size: int) -> np.ndarray:
    """Indices of the ``size`` weight vectors closest in angle to each vector.

    Rows are ordered by ascending angle, ties broken by the lower index, so the
    first entry of row i is i itself.
    """
    weights = np.asarray(weights, dtype=float)
    n = len(weights)
    if not 1 <= size <= n:
        raise ValueError(f"neighborhood size must be in [1, {n}], got {size}")
    angles = angle_matrix(weights, weights)
    # Self-angles can come out as ~1e-8 from rounding; pin them to zero and
    # round the rest so that geometric ties fall back to index order.
    np.fill_diagonal(angles, 0.0)
    angles = np.round(angles, 12)
    order = np.argsort(angles, axis=1, kind="stable")
    return order[:, :size]


class WeightVector(NamedTuple):
    index: int
    components: np.ndarray
    neighbors: np.ndarray


@dataclass(frozen=True)
class WeightSet:
    """Weight vectors together with their cached norms and neighborhoods."""

    vectors: np.ndarray
    neighbors: np.ndarray

    @classmethod
    def build(cls, vectors: np.ndarray, neighborhood_size: int = DEFAULT_NEIGHBORHOOD) -> WeightSet:
        vectors = np.asarray(vectors, dtype=float)
        size = min(neighborhood_size, len(vectors))
        return cls(vectors=vectors, neighbors=neighborhoods(vectors, size))

    @property
    def n_obj(self) -> int:
        return self.vectors.shape[1]

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, index: int) -> WeightVector:
        return WeightVector(index, self.vectors[index], self.neighbors[index])

    def __iter__(self) -> Iterator[WeightVector]:
        return (self[i] for i in range(len(self)))


def save_weights(weights: np.ndarray, path: str | Path) -> None:
    """Write one vector per line, space separated, at full double precision."""
    np.savetxt(path, np.atleast_2d(weights), fmt="%.17g", delimiter=" ")


def load_weights(path: str | Path) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, dtype=float))
