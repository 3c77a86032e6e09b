"""Real-coded variation: mating selection, SBX crossover and polynomial mutation.

The crossover and mutation operators follow the bounded formulations used by
NSGA-II and jMetal. Both accept a single vector or a (k, n) batch and draw
all of their randomness from the caller's generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = 1.0e-14


@dataclass(frozen=True)
class VariationConfig:
    """Operator settings. ``mutation_prob=None`` means 1/n."""

    crossover_prob: float = 1.0
    crossover_eta: float = 20.0
    mutation_prob: float | None = None
    mutation_eta: float = 20.0
    neighborhood_prob: float = 0.8

    def __post_init__(self) -> None:
        for name in ("crossover_prob", "neighborhood_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.mutation_prob is not None and not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError(f"mutation_prob must lie in [0, 1], got {self.mutation_prob}")
        if self.crossover_eta <= 0 or self.mutation_eta <= 0:
            raise ValueError("distribution indices must be positive")

    def mutation_rate(self, n_var: int) -> float:
        return 1.0 / n_var if self.mutation_prob is None else self.mutation_prob


def mating_selection(
    current: int,
    neighbors: np.ndarray,
    assoc: np.ndarray,
    delta: float,
    rng: np.random.Generator,
) -> tuple[int, int]:
    """Pick two parent indices for the subproblem ``current``.

    With probability ``delta`` the parents come from the individuals whose
    associated weight is in the neighborhood of ``current``; otherwise, or if
    that neighborhood holds nobody, from the whole population. Parents are
    distinct whenever the pool has at least two members.

    Args:
        current: Index of the weight vector being served.
        neighbors: (N, T) neighborhood index table.
        assoc: Associated weight index of every population member.
        delta: Probability of mating inside the neighborhood.
        rng: Random stream of the run.
    """
    pool = None
    if rng.random() < delta:
        local = np.flatnonzero(np.isin(assoc, neighbors[current]))
        if len(local):
            pool = local
    if pool is None:
        pool = np.arange(len(assoc))
    if len(pool) == 1:
        return int(pool[0]), int(pool[0])
    a, b = rng.choice(pool, size=2, replace=False)
    return int(a), int(b)


def _spread_factor(rand: np.ndarray, beta: np.ndarray, eta: float) -> np.ndarray:
    alpha = 2.0 - beta ** (-(eta + 1.0))
    inner = np.where(rand <= 1.0 / alpha, rand * alpha, 1.0 / (2.0 - rand * alpha))
    return inner ** (1.0 / (eta + 1.0))


def sbx_pair(
    p1: np.ndarray,
    p2: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    prob: float,
    eta: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Bounded simulated binary crossover, returning both children.

    Each pair is crossed with probability ``prob``; within a crossed pair every
    variable is recombined with probability 0.5 and the two children swap
    that variable with probability 0.5.
    """
    p1 = np.atleast_2d(np.asarray(p1, dtype=float))
    p2 = np.atleast_2d(np.asarray(p2, dtype=float))
    shape = p1.shape
    lower = np.broadcast_to(lower, shape)
    upper = np.broadcast_to(upper, shape)

    do_pair = rng.random(shape[0]) <= prob
    do_var = rng.random(shape) <= 0.5
    rand = rng.random(shape)
    swap = rng.random(shape) <= 0.5

    y1 = np.minimum(p1, p2)
    y2 = np.maximum(p1, p2)
    diff = y2 - y1
    active = do_pair[:, None] & do_var & (np.abs(p1 - p2) > EPS)
    safe = np.where(active, diff, 1.0)

    beta_lo = 1.0 + 2.0 * (y1 - lower) / safe
    beta_hi = 1.0 + 2.0 * (upper - y2) / safe
    c1 = 0.5 * ((y1 + y2) - _spread_factor(rand, beta_lo, eta) * diff)
    c2 = 0.5 * ((y1 + y2) + _spread_factor(rand, beta_hi, eta) * diff)
    c1 = np.clip(c1, lower, upper)
    c2 = np.clip(c2, lower, upper)

    child1 = np.where(active, np.where(swap, c2, c1), p1)
    child2 = np.where(active, np.where(swap, c1, c2), p2)
    return child1, child2


def sbx_crossover(
    p1: np.ndarray,
    p2: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    prob: float,
    eta: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """SBX keeping one child of each pair, chosen uniformly at random."""
    single = np.ndim(p1) == 1
    c1, c2 = sbx_pair(p1, p2, lower, upper, prob, eta, rng)
    keep_first = rng.random(len(c1)) < 0.5
    child = np.where(keep_first[:, None], c1, c2)
    return child[0] if single else child


def polynomial_mutation(
    x: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    prob: float,
    eta: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Bounded polynomial mutation applied to each variable with probability ``prob``."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    y = np.atleast_2d(x).copy()
    lower = np.broadcast_to(lower, y.shape)
    upper = np.broadcast_to(upper, y.shape)

    mutate = rng.random(y.shape) < prob
    rand = rng.random(y.shape)
    span = upper - lower
    span_safe = np.where(span > 0, span, 1.0)
    delta1 = (y - lower) / span_safe
    delta2 = (upper - y) / span_safe
    power = 1.0 / (eta + 1.0)

    lo = rand <= 0.5
    val_lo = 2.0 * rand + (1.0 - 2.0 * rand) * (1.0 - delta1) ** (eta + 1.0)
    val_hi = 2.0 * (1.0 - rand) + 2.0 * (rand - 0.5) * (1.0 - delta2) ** (eta + 1.0)
    deltaq = np.where(lo, val_lo**power - 1.0, 1.0 - val_hi**power)

    y = np.where(mutate, np.clip(y + deltaq * span, lower, upper), y)
    return y[0] if single else y


def reproduce(
    x: np.ndarray,
    assoc: np.ndarray,
    neighbors: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    config: VariationConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """One offspring per weight vector: mating selection, SBX, then mutation."""
    n_weights = len(neighbors)
    parents = np.array(
        [
            mating_selection(i, neighbors, assoc, config.neighborhood_prob, rng)
            for i in range(n_weights)
        ],
        dtype=np.int64,
    )
    children = sbx_crossover(
        x[parents[:, 0]], x[parents[:, 1]], lower, upper,
        config.crossover_prob, config.crossover_eta, rng,
    )
    return polynomial_mutation(
        children, lower, upper, config.mutation_rate(x.shape[1]), config.mutation_eta, rng
    )
