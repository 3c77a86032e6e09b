"""Command line entry point: ``moeadld run|metrics|weights|reference``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from moeadld import metrics, weights
from moeadld.harness.config import ConfigError, load_config
from moeadld.harness.experiment import ExperimentError, export_results, run_experiment
from moeadld.problems import get_problem, save_points

OUTPUT_ENV = "MOEADLD_OUTPUT_DIR"


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = load_config(args.config).with_overrides(
        seed=args.seed, runs=args.runs, workers=args.workers, generations=args.generations
    )
    out = args.out or cfg.output or os.environ.get(OUTPUT_ENV) or "results"
    result = run_experiment(cfg, out)
    target = export_results(result, args.format, Path(out) / f"results.{args.format}")
    for name, agg in result.aggregates.items():
        print(f"{cfg.problem} M={cfg.n_obj} {name}: best={agg.best:.6e} "
              f"median={agg.median:.6e} worst={agg.worst:.6e}")
    print(f"wrote {target}")
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    points = metrics.read_points(args.points)
    if args.metric == "igd":
        if not args.ref:
            raise SystemExit("--ref is required for igd")
        value = metrics.igd(points, metrics.read_points(args.ref))
        record = metrics.indicator_record("igd", value, ref=str(args.ref))
    else:
        if not args.ref_point:
            raise SystemExit("--ref-point is required for hv")
        ref_point = np.asarray(_float_list(args.ref_point))
        if args.monte_carlo:
            est = metrics.hv_monte_carlo(
                points, ref_point, args.samples, np.random.default_rng(args.seed), args.normalize
            )
            record = metrics.indicator_record(
                "hv", est.value, est.stderr, ref_point=ref_point.tolist(),
                mode="monte-carlo", samples=args.samples, normalize=args.normalize,
            )
        else:
            value = metrics.hv_exact(points, ref_point, args.normalize)
            record = metrics.indicator_record(
                "hv", value, ref_point=ref_point.tolist(), mode="exact", normalize=args.normalize
            )
    print(json.dumps(record))
    return 0


def _weights_from_args(args: argparse.Namespace) -> np.ndarray:
    if args.d is None:
        return weights.default_weights(args.m)
    if args.d2 is None:
        return weights.generate_simplex_lattice(args.m, args.d)
    return weights.generate_two_layer(args.m, args.d, args.d2, args.tau)


def _cmd_weights(args: argparse.Namespace) -> int:
    w = _weights_from_args(args)
    if args.out:
        weights.save_weights(w, args.out)
        print(f"{len(w)} weight vectors -> {args.out}")
    else:
        np.savetxt(sys.stdout, w, fmt="%.17g")
    return 0


def _cmd_reference(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem, args.m)
    front = problem.reference_front(_weights_from_args(args))
    if args.out:
        save_points(front, args.out)
        print(f"{len(front)} reference points -> {args.out}")
    else:
        np.savetxt(sys.stdout, front, fmt="%.17g")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moeadld", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment described by a JSON config")
    p.add_argument("config")
    p.add_argument("--seed", type=int, help="base seed (runs use seed, seed+1, ...)")
    p.add_argument("--runs", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--out", help=f"output directory (default: ${OUTPUT_ENV} or ./results)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("metrics", help="compute IGD or HV for a point file")
    p.add_argument("points")
    p.add_argument("--metric", choices=("igd", "hv"), required=True)
    p.add_argument("--ref", help="reference set file (igd)")
    p.add_argument("--ref-point", help="comma separated reference point (hv)")
    p.add_argument("--normalize", action="store_true", help="divide HV by the product of the reference point")
    p.add_argument("--monte-carlo", action="store_true")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_metrics)

    for name, func, help_ in (
        ("weights", _cmd_weights, "generate a weight vector set"),
        ("reference", _cmd_reference, "generate a reference front for a problem"),
    ):
        p = sub.add_parser(name, help=help_)
        if name == "reference":
            p.add_argument("--problem", required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--d", type=int, help="(boundary) divisions; table default if omitted")
        p.add_argument("--d2", type=int, help="inside-layer divisions")
        p.add_argument("--tau", type=float, default=weights.DEFAULT_TAU)
        p.add_argument("--out")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ExperimentError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
