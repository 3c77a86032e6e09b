"""Repeated seeded runs, indicator evaluation, aggregation and persistence."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from moeadld.engine import RunRecord, run
from moeadld.harness.config import ExperimentConfig
from moeadld.metrics import hypervolume, igd, read_points
from moeadld.weights import WeightSet

logger = logging.getLogger(__name__)

MEDIAN_RULE = "lower-middle of the best-to-worst ordering"
CSV_COLUMNS = ("problem", "M", "seed", "metric", "value")


class ExperimentError(RuntimeError):
    def __init__(self, seed: int, cause: BaseException) -> None:
        super().__init__(f"run with seed {seed} failed: {cause}")
        self.seed = seed


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


@dataclass
class AggregateResult:
    """Per-run values of one indicator plus best/median/worst."""

    metric: str
    seeds: list[int]
    values: list[float]
    maximize: bool = False

    def _ranked(self) -> list[float]:
        return sorted(self.values, reverse=self.maximize)

    @property
    def best(self) -> float:
        return self._ranked()[0]

    @property
    def median(self) -> float:
        ranked = self._ranked()
        return ranked[(len(ranked) - 1) // 2]

    @property
    def worst(self) -> float:
        return self._ranked()[-1]

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "maximize": self.maximize,
            "seeds": list(self.seeds),
            "values": list(self.values),
            "best": self.best,
            "median": self.median,
            "worst": self.worst,
            "median_rule": MEDIAN_RULE,
        }


@dataclass
class ExperimentResult:
    problem: str
    n_obj: int
    config: dict
    aggregates: dict[str, AggregateResult]
    records: list[RunRecord] = field(default_factory=list)

    def rows(self) -> list[tuple[str, int, int, str, float]]:
        out = []
        for metric, agg in self.aggregates.items():
            for seed, value in zip(agg.seeds, agg.values):
                out.append((self.problem, self.n_obj, seed, metric, value))
        out.sort(key=lambda r: (r[2], list(self.aggregates).index(r[3])))
        return out

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "M": self.n_obj,
            "config": self.config,
            "aggregates": {k: v.to_dict() for k, v in self.aggregates.items()},
        }


def _evaluate_indicators(cfg: ExperimentConfig, record: RunRecord, problem, reference) -> dict:
    values = {}
    for metric in cfg.metrics:
        if metric == "igd":
            values["igd"] = igd(record.f, reference)
        else:
            rng = np.random.default_rng([record.seed, 7])
            value, stderr = hypervolume(
                record.f, problem.hv_reference_point(), normalize=True,
                samples=cfg.hv_samples, rng=rng,
            )
            values["hv"] = value
            if stderr is not None:
                values["hv_stderr"] = stderr
    return values


def run_single(cfg: ExperimentConfig, seed: int) -> RunRecord:
    """One seeded run with its indicators attached."""
    problem = cfg.make_problem()
    weights = WeightSet.build(cfg.weight_vectors(), cfg.algorithm.neighborhood_size)
    reference = None
    if "igd" in cfg.metrics:
        if cfg.reference_file:
            reference = read_points(cfg.reference_file)
        else:
            reference = problem.reference_front(weights.vectors)
    try:
        record = run(problem, weights, cfg.algo_for_seed(seed)).record
    except Exception as exc:
        raise ExperimentError(seed, exc) from exc
    record.indicators = _evaluate_indicators(cfg, record, problem, reference)
    logger.info("%s M=%d seed=%d %s", cfg.problem, cfg.n_obj, seed, record.indicators)
    return record


def _run_star(args: tuple[ExperimentConfig, int]) -> RunRecord:
    return run_single(*args)


def run_experiment(cfg: ExperimentConfig, output: str | Path | None = None) -> ExperimentResult:
    """Run seeds base_seed .. base_seed + runs - 1 and aggregate every metric.

    When an output directory is given (argument or config), every RunRecord is
    written to ``runs/seed_<s>.json`` next to ``aggregate.json``.
    """
    seeds = [cfg.seed + i for i in range(cfg.runs)]
    jobs = [(cfg, s) for s in seeds]
    if cfg.workers > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_run_star, jobs))
    else:
        records = [_run_star(job) for job in jobs]
    records.sort(key=lambda r: r.seed)

    aggregates = {
        m: AggregateResult(
            metric=m,
            seeds=[r.seed for r in records],
            values=[r.indicators[m] for r in records],
            maximize=(m == "hv"),
        )
        for m in cfg.metrics
    }
    result = ExperimentResult(cfg.problem, cfg.n_obj, cfg.to_dict(), aggregates, records)

    out_dir = output if output is not None else cfg.output
    if out_dir is not None:
        persist(result, out_dir)
    return result


def persist(result: ExperimentResult, directory: str | Path) -> None:
    directory = Path(directory)
    (directory / "runs").mkdir(parents=True, exist_ok=True)
    for record in result.records:
        record.save(directory / "runs" / f"seed_{record.seed}.json")
    (directory / "aggregate.json").write_text(json.dumps(result.to_dict(), indent=2))


def results_to_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for problem, m, seed, metric, value in result.rows():
        writer.writerow((problem, m, seed, metric, _fmt(value)))
    return buf.getvalue()


def export_results(result: ExperimentResult, fmt: str, path: str | Path) -> Path:
    """Write per-run indicator values as CSV, or the aggregate structure as JSON."""
    path = Path(path)
    if not result.aggregates or not any(a.values for a in result.aggregates.values()):
        raise ValueError("nothing to export")
    if fmt == "csv":
        text = results_to_csv(result)
    elif fmt == "json":
        text = json.dumps(result.to_dict(), indent=2)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc
    return path


def read_csv_results(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        row["M"] = int(row["M"])
        row["seed"] = int(row["seed"])
        row["value"] = float(row["value"])
    return rows
