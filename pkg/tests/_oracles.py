"""Independent brute-force oracles shared by the test modules."""

import numpy as np


def grid_hypervolume(points: np.ndarray, ref: np.ndarray, cells: int) -> float:
    """Count grid cells over [0, ref] whose centre is dominated by some point.

    The last axis is handled as a staircase: for each cell column the covered
    height is ref minus the lowest last coordinate among points that dominate
    the column, so memory stays at cells**(M-1).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ref = np.asarray(ref, dtype=float)
    m = len(ref)
    step = ref / cells
    axes = [(np.arange(cells) + 0.5) * step[k] for k in range(m - 1)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m - 1)
    covers = np.all(points[None, :, :-1] <= mesh[:, None, :], axis=2)
    floor = np.where(covers, points[None, :, -1], np.inf).min(axis=1)
    centres_z = (np.arange(cells) + 0.5) * step[-1]
    counts = cells - np.searchsorted(centres_z, floor, side="left")
    return float(counts.sum() * np.prod(step))
