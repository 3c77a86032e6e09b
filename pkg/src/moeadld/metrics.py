"""Quality indicators: IGD, exact hypervolume and Monte Carlo hypervolume."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


def _as_points(points: np.ndarray, name: str) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(points, dtype=float))
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite coordinates")
    return arr


def igd(solutions: np.ndarray, reference: np.ndarray) -> float:
    """Mean distance from each reference point to its nearest solution."""
    s = _as_points(solutions, "solution set")
    r = _as_points(reference, "reference set")
    if s.shape[1] != r.shape[1]:
        raise ValueError(f"dimension mismatch: {s.shape[1]} vs {r.shape[1]}")
    d = np.sqrt(((r[:, None, :] - s[None, :, :]) ** 2).sum(axis=2))
    return float(d.min(axis=1).mean())


def _filter(points: np.ndarray, ref: np.ndarray) -> np.ndarray:
    # Only points strictly better than the reference in every objective add volume.
    return points[np.all(points < ref, axis=1)]


def _nondominated(points: np.ndarray) -> np.ndarray:
    """Drop points weakly dominated by another point (duplicates keep one copy)."""
    if len(points) <= 1:
        return points
    pts = np.unique(points, axis=0)
    le = np.all(pts[:, None, :] <= pts[None, :, :], axis=2)
    lt = np.any(pts[:, None, :] < pts[None, :, :], axis=2)
    dominated = np.any(le & lt, axis=0)
    return pts[~dominated]


def _hv2d(points: np.ndarray, ref: np.ndarray) -> float:
    pts = points[np.argsort(points[:, 0], kind="stable")]
    volume = 0.0
    best_y = ref[1]
    for x, y in pts:
        if y < best_y:
            volume += (ref[0] - x) * (best_y - y)
            best_y = y
    return volume


def _wfg(points: np.ndarray, ref: np.ndarray) -> float:
    n, m = points.shape
    if n == 0:
        return 0.0
    if m == 1:
        return float(ref[0] - points[:, 0].min())
    if n == 1:
        return float(np.prod(ref - points[0]))
    if m == 2:
        return _hv2d(points, ref)
    # Slice on the last objective: sorted descending, each point's slab is
    # exclusive with respect to the points that follow it.
    pts = points[np.argsort(-points[:, -1], kind="stable")]
    head = pts[:, :-1]
    sub_ref = ref[:-1]
    volume = 0.0
    for i in range(n):
        height = ref[-1] - pts[i, -1]
        incl = float(np.prod(sub_ref - head[i]))
        rest = head[i + 1 :]
        if len(rest):
            limited = _nondominated(np.maximum(rest, head[i]))
            incl -= _wfg(limited, sub_ref)
        volume += height * incl
    return volume


def hv_exact(points: np.ndarray, ref_point: np.ndarray, normalize: bool = False) -> float:
    """Exact hypervolume dominated by ``points`` and bounded by ``ref_point``.

    Points that do not strictly dominate the reference point contribute
    nothing and are dropped. With ``normalize`` the value is divided by the
    product of the reference coordinates.
    """
    ref = np.asarray(ref_point, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size and pts.shape[1] != len(ref):
        raise ValueError(f"dimension mismatch: {pts.shape[1]} vs {len(ref)}")
    pts = _nondominated(_filter(pts, ref)) if pts.size else np.empty((0, len(ref)))
    volume = _wfg(pts, ref)
    if normalize:
        volume /= float(np.prod(ref))
    return volume


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float
    samples: int


def hv_monte_carlo(
    points: np.ndarray,
    ref_point: np.ndarray,
    samples: int = 1_000_000,
    rng: np.random.Generator | None = None,
    normalize: bool = False,
    chunk: int = 100_000,
) -> MonteCarloEstimate:
    """Hypervolume estimated by uniform sampling of the box [min(points), ref].

    Every dominated point lies inside that box, so the estimate is the hit
    fraction times the box volume. The standard error is the binomial one.
    """
    rng = np.random.default_rng() if rng is None else rng
    ref = np.asarray(ref_point, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    pts = _nondominated(_filter(pts, ref)) if pts.size else np.empty((0, len(ref)))
    scale = float(np.prod(ref)) if normalize else 1.0
    if len(pts) == 0:
        return MonteCarloEstimate(0.0, 0.0, samples)

    low = pts.min(axis=0)
    box = float(np.prod(ref - low))
    hits = 0
    remaining = samples
    while remaining:
        size = min(chunk, remaining)
        u = low + rng.random((size, len(ref))) * (ref - low)
        covered = np.zeros(size, dtype=bool)
        for p in pts:
            covered |= np.all(u >= p, axis=1)
        hits += int(covered.sum())
        remaining -= size
    frac = hits / samples
    stderr = box * np.sqrt(frac * (1.0 - frac) / samples)
    return MonteCarloEstimate(box * frac / scale, stderr / scale, samples)


def hypervolume(
    points: np.ndarray,
    ref_point: np.ndarray,
    normalize: bool = True,
    samples: int = 1_000_000,
    rng: np.random.Generator | None = None,
    exact_max_dim: int = 10,
) -> tuple[float, float | None]:
    """Exact HV up to ``exact_max_dim`` objectives, Monte Carlo above it.

    Returns (value, stderr); stderr is None for exact values.
    """
    if len(np.asarray(ref_point)) <= exact_max_dim:
        return hv_exact(points, ref_point, normalize), None
    est = hv_monte_carlo(points, ref_point, samples, rng, normalize)
    return est.value, est.stderr


def indicator_record(metric: str, value: float, stderr: float | None = None, **config) -> dict:
    record = {"metric": metric, "value": value}
    if stderr is not None:
        record["stderr"] = stderr
    record["config"] = config
    return record


def read_points(path: str | Path) -> np.ndarray:
    """Plain text (one point per line, whitespace or comma separated) or a JSON array."""
    text = Path(path).read_text().strip()
    if text.startswith("["):
        return np.atleast_2d(np.asarray(json.loads(text), dtype=float))
    rows = [line.replace(",", " ").split() for line in text.splitlines() if line.strip()]
    return np.atleast_2d(np.asarray(rows, dtype=float))


def write_points(points: np.ndarray, path: str | Path) -> None:
    path = Path(path)
    pts = np.atleast_2d(points)
    if path.suffix == ".json":
        path.write_text(json.dumps(pts.tolist()))
    else:
        np.savetxt(path, pts, fmt="%.17g", delimiter=" ")
