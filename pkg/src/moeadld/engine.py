"""Decomposition with local dominance: the main evolutionary loop.

Each generation the parents and offspring (2N individuals) are split into N
subpopulations, one per weight vector, by smallest included angle. Inside a
subpopulation individuals are kept ordered best-first by a hybrid comparison:
Pareto dominance first, PBI value as the tie-breaker for mutually
non-dominated pairs. The next population is then filled level by level, where
level i is the i-th member of every subpopulation.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from moeadld.operators import VariationConfig, reproduce
from moeadld.problems.base import Problem, constraint_violation
from moeadld.problems.wfg import WFG
from moeadld.weights import WeightSet, angle_matrix

logger = logging.getLogger(__name__)


class NonFiniteObjectiveError(RuntimeError):
    """A problem returned NaN or infinite objective values."""


@dataclass(slots=True)
class Individual:
    x: np.ndarray
    f: np.ndarray
    cv: float = 0.0
    assoc: int = -1
    # PBI against the associated weight under the current ideal/nadir points.
    pbi: float = float("nan")

    @property
    def feasible(self) -> bool:
        return self.cv <= 0.0


@dataclass(frozen=True)
class IdealNadir:
    """Running per-objective minima (ideal) and maxima (nadir) seen so far."""

    ideal: np.ndarray
    nadir: np.ndarray

    @classmethod
    def from_points(cls, f: np.ndarray) -> IdealNadir:
        f = np.atleast_2d(f)
        return cls(f.min(axis=0), f.max(axis=0))

    def update(self, f: np.ndarray) -> IdealNadir:
        f = np.atleast_2d(f)
        return IdealNadir(
            np.minimum(self.ideal, f.min(axis=0)),
            np.maximum(self.nadir, f.max(axis=0)),
        )

    @property
    def span(self) -> np.ndarray:
        span = self.nadir - self.ideal
        # A constant objective gives no scale information; 1 keeps the order.
        return np.where(span > 0.0, span, 1.0)


def update_ideal_nadir(ideal_nadir: IdealNadir, f: np.ndarray) -> IdealNadir:
    return ideal_nadir.update(f)


def normalize(f: np.ndarray, ideal_nadir: IdealNadir) -> np.ndarray:
    """Map objectives to (f - ideal) / (nadir - ideal)."""
    return (np.asarray(f, dtype=float) - ideal_nadir.ideal) / ideal_nadir.span


def _translate(f: np.ndarray, ideal_nadir: IdealNadir, scaled: bool) -> np.ndarray:
    if scaled:
        return normalize(f, ideal_nadir)
    return np.asarray(f, dtype=float) - ideal_nadir.ideal


def pbi(
    f: np.ndarray,
    w: np.ndarray,
    ideal_nadir: IdealNadir,
    theta: float = 5.0,
    scaled: bool = False,
) -> np.ndarray | float:
    """Penalty-based boundary intersection value d1 + theta * d2.

    ``f`` may be a single objective vector or a batch; ``w`` is either one
    weight vector or one per row of ``f``. With ``scaled`` the objectives are
    normalized by the ideal/nadir span before projecting, otherwise they are
    only translated by the ideal point.
    """
    fbar = _translate(f, ideal_nadir, scaled)
    w = np.asarray(w, dtype=float)
    unit = w / np.linalg.norm(w, axis=-1, keepdims=True)
    d1 = np.abs(np.sum(fbar * unit, axis=-1))
    d2 = np.linalg.norm(fbar - d1[..., None] * unit, axis=-1)
    out = d1 + theta * d2
    return float(out) if np.ndim(out) == 0 else out


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and better somewhere."""
    strictly = False
    for ai, bi in zip(a, b):
        if ai > bi:
            return False
        if ai < bi:
            strictly = True
    return strictly


def _hybrid_better(fx, fy, pbi_x: float, pbi_y: float) -> bool:
    if dominates(fx, fy):
        return True
    if dominates(fy, fx):
        return False
    return pbi_x < pbi_y


def _hybrid_better_constrained(fx, fy, cv_x: float, cv_y: float, pbi_x: float, pbi_y: float) -> bool:
    feas_x = cv_x <= 0.0
    feas_y = cv_y <= 0.0
    if feas_x and feas_y:
        return _hybrid_better(fx, fy, pbi_x, pbi_y)
    if feas_x:
        return True
    if not feas_y:
        return cv_x <= cv_y and _hybrid_better(fx, fy, pbi_x, pbi_y)
    return False


def compare(
    x: Individual,
    y: Individual,
    w: np.ndarray,
    ideal_nadir: IdealNadir,
    theta: float = 5.0,
    scaled: bool = False,
) -> bool:
    """True if ``x`` is better than ``y`` on the subproblem ``w``.

    ``x`` wins if it dominates ``y``, loses if dominated, and otherwise the
    strictly smaller PBI wins (so equal individuals compare False both ways).
    """
    return _hybrid_better(
        x.f, y.f,
        pbi(x.f, w, ideal_nadir, theta, scaled),
        pbi(y.f, w, ideal_nadir, theta, scaled),
    )


def compare_constrained(
    x: Individual,
    y: Individual,
    w: np.ndarray,
    ideal_nadir: IdealNadir,
    theta: float = 5.0,
    scaled: bool = False,
) -> bool:
    """Feasibility-first variant of :func:`compare`.

    Feasible beats infeasible. Between two infeasible individuals ``x`` wins
    only if it has no larger violation *and* wins the unconstrained comparison.
    """
    return _hybrid_better_constrained(
        x.f, y.f, x.cv, y.cv,
        pbi(x.f, w, ideal_nadir, theta, scaled),
        pbi(y.f, w, ideal_nadir, theta, scaled),
    )


def associate(
    f: np.ndarray,
    weights: np.ndarray,
    ideal_nadir: IdealNadir,
    scaled: bool = False,
) -> np.ndarray | int:
    """Index of the weight vector with the smallest angle to each objective vector.

    Ties go to the lower index; an objective vector equal to the ideal point
    (zero after translation) is assigned to weight 0.
    """
    f = np.asarray(f, dtype=float)
    fbar = np.atleast_2d(_translate(f, ideal_nadir, scaled))
    idx = np.argmin(angle_matrix(fbar, weights), axis=1)
    idx[~np.any(fbar != 0.0, axis=1)] = 0
    return int(idx[0]) if f.ndim == 1 else idx


@dataclass(frozen=True)
class AlgoConfig:
    """Algorithm settings.

    ``normalize`` and ``constrained`` default to None, meaning "decide from the
    problem": normalization on for WFG instances, the constrained comparison on
    for problems that declare constraints.
    """

    generations: int = 250
    seed: int = 0
    theta: float = 5.0
    neighborhood_size: int = 20
    normalize: bool | None = None
    constrained: bool | None = None
    variation: VariationConfig = field(default_factory=VariationConfig)
    debug: bool = False

    def resolve(self, problem: Problem) -> AlgoConfig:
        normalize = isinstance(problem, WFG) if self.normalize is None else self.normalize
        constrained = problem.constrained if self.constrained is None else self.constrained
        return AlgoConfig(
            generations=self.generations,
            seed=self.seed,
            theta=self.theta,
            neighborhood_size=self.neighborhood_size,
            normalize=normalize,
            constrained=constrained,
            variation=self.variation,
            debug=self.debug,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> AlgoConfig:
        data = dict(data)
        variation = VariationConfig(**data.pop("variation", {}))
        return cls(variation=variation, **data)


def _precedes(a: Individual, b: Individual, constrained: bool) -> bool:
    """A strict, transitive "must come before" relation implied by the comparison."""
    if not constrained:
        return dominates(a.f, b.f)
    if a.feasible != b.feasible:
        return a.feasible
    if not a.feasible and a.cv > b.cv:
        return False
    return dominates(a.f, b.f)


def _insert(members: list[Individual], s: Individual, constrained: bool) -> None:
    better = _hybrid_better_constrained if constrained else None
    pos = len(members)
    last_forced = -1
    for i, m in enumerate(members):
        if pos == len(members):
            if constrained:
                wins = better(s.f, m.f, s.cv, m.cv, s.pbi, m.pbi)
            else:
                wins = _hybrid_better(s.f, m.f, s.pbi, m.pbi)
            if wins:
                pos = i
        if _precedes(m, s, constrained):
            last_forced = i
    # The hybrid order is not transitive; never place s ahead of a member that
    # dominates it.
    members.insert(max(pos, last_forced + 1), s)


def partition(
    individuals: Sequence[Individual],
    weights: np.ndarray,
    ideal_nadir: IdealNadir,
    theta: float = 5.0,
    scaled: bool = False,
    constrained: bool = False,
) -> list[list[Individual]]:
    """Split individuals into one ordered subpopulation per weight vector.

    Each individual gets its associated weight index and PBI cached, then is
    inserted in arrival order ahead of the first member it beats (after any
    member that is equal or better).
    """
    weights = np.asarray(weights, dtype=float)
    subpops: list[list[Individual]] = [[] for _ in range(len(weights))]
    if not individuals:
        return subpops
    f = np.array([ind.f for ind in individuals])
    assoc = associate(f, weights, ideal_nadir, scaled)
    values = pbi(f, weights[assoc], ideal_nadir, theta, scaled)
    for ind, a, v in zip(individuals, assoc, values):
        ind.assoc = int(a)
        ind.pbi = float(v)
        _insert(subpops[ind.assoc], ind, constrained)
    return subpops


def levels(subpops: Sequence[Sequence[Individual]]) -> list[list[Individual]]:
    """Level i collects the i-th member of every subpopulation, in weight order."""
    depth = max((len(sp) for sp in subpops), default=0)
    return [[sp[i] for sp in subpops if len(sp) > i] for i in range(depth)]


def elitist_selection(
    subpops: Sequence[Sequence[Individual]],
    size: int,
    rng: np.random.Generator,
) -> list[Individual]:
    """Admit whole levels while they fit, then a random subset of the next one."""
    selected: list[Individual] = []
    for level in levels(subpops):
        room = size - len(selected)
        if room == 0:
            break
        if len(level) <= room:
            selected.extend(level)
        else:
            picks = np.sort(rng.choice(len(level), size=room, replace=False))
            selected.extend(level[j] for j in picks)
            break
    return selected


@dataclass(eq=False)
class RunRecord:
    """Everything needed to reproduce and inspect one run."""

    problem: str
    n_obj: int
    seed: int
    config: dict
    x: np.ndarray
    f: np.ndarray
    cv: np.ndarray
    ideal_history: np.ndarray
    nadir_history: np.ndarray
    wall_time: float = 0.0
    indicators: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "n_obj": self.n_obj,
            "seed": self.seed,
            "config": self.config,
            "x": self.x.tolist(),
            "f": self.f.tolist(),
            "cv": self.cv.tolist(),
            "ideal_history": self.ideal_history.tolist(),
            "nadir_history": self.nadir_history.tolist(),
            "wall_time": self.wall_time,
            "indicators": self.indicators,
        }

    @classmethod
    def from_dict(cls, data: dict) -> RunRecord:
        arrays = {k: np.asarray(data[k], dtype=float) for k in ("x", "f", "cv", "ideal_history", "nadir_history")}
        return cls(
            problem=data["problem"],
            n_obj=data["n_obj"],
            seed=data["seed"],
            config=data["config"],
            wall_time=data.get("wall_time", 0.0),
            indicators=data.get("indicators", {}),
            **arrays,
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path: str | Path) -> RunRecord:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def same_outcome(self, other: RunRecord) -> bool:
        """Bitwise equality of everything except wall time."""
        a, b = self.to_dict(), other.to_dict()
        a.pop("wall_time")
        b.pop("wall_time")
        return a == b


@dataclass
class RunResult:
    population: list[Individual]
    record: RunRecord


def _check_finite(f: np.ndarray, problem: Problem) -> None:
    if not np.all(np.isfinite(f)):
        raise NonFiniteObjectiveError(f"{problem.name} produced non-finite objectives")


def _check_subpops(subpops: list[list[Individual]], constrained: bool) -> None:
    for sp in subpops:
        for i, a in enumerate(sp):
            for b in sp[i + 1 :]:
                if _precedes(b, a, constrained):
                    raise AssertionError("subpopulation order violated")


def run(
    problem: Problem,
    weights: WeightSet | np.ndarray,
    config: AlgoConfig = AlgoConfig(),
    on_generation: Callable[[int, IdealNadir], None] | None = None,
) -> RunResult:
    """Evolve a population of size len(weights) for ``config.generations`` generations."""
    if not isinstance(weights, WeightSet):
        weights = WeightSet.build(weights, config.neighborhood_size)
    if weights.n_obj != problem.n_obj:
        raise ValueError(f"weights have {weights.n_obj} objectives, problem has {problem.n_obj}")
    cfg = config.resolve(problem)
    w = weights.vectors
    size = len(w)
    rng = np.random.default_rng(cfg.seed)
    start = time.perf_counter()

    x = problem.sample(rng, size)
    ev = problem.evaluate(x)
    f, cv = ev.objectives, constraint_violation(ev.constraints)
    _check_finite(f, problem)
    ideal_nadir = IdealNadir.from_points(f)
    assoc = associate(f, w, ideal_nadir, cfg.normalize)
    ideal_hist = [ideal_nadir.ideal]
    nadir_hist = [ideal_nadir.nadir]
    population = [Individual(x[i], f[i], float(cv[i]), int(assoc[i])) for i in range(size)]

    for gen in range(cfg.generations):
        xq = reproduce(x, assoc, weights.neighbors, problem.lower, problem.upper, cfg.variation, rng)
        evq = problem.evaluate(xq)
        fq, cvq = evq.objectives, constraint_violation(evq.constraints)
        _check_finite(fq, problem)
        ideal_nadir = ideal_nadir.update(fq)

        offspring = [Individual(xq[i], fq[i], float(cvq[i])) for i in range(size)]
        subpops = partition(
            population + offspring, w, ideal_nadir, cfg.theta, cfg.normalize, cfg.constrained
        )
        if cfg.debug:
            _check_subpops(subpops, cfg.constrained)
        population = elitist_selection(subpops, size, rng)

        x = np.array([ind.x for ind in population])
        assoc = np.array([ind.assoc for ind in population])
        ideal_hist.append(ideal_nadir.ideal)
        nadir_hist.append(ideal_nadir.nadir)
        if on_generation is not None:
            on_generation(gen + 1, ideal_nadir)

    record = RunRecord(
        problem=problem.name,
        n_obj=problem.n_obj,
        seed=cfg.seed,
        config=cfg.to_dict(),
        x=np.array([ind.x for ind in population]),
        f=np.array([ind.f for ind in population]),
        cv=np.array([ind.cv for ind in population]),
        ideal_history=np.array(ideal_hist),
        nadir_history=np.array(nadir_hist),
        wall_time=time.perf_counter() - start,
    )
    logger.debug("%s seed=%d finished in %.2fs", problem.name, cfg.seed, record.wall_time)
    return RunResult(population, record)
