"""
Pareto dominance, nondominated sorting and crowding distance (minimization).
"""

import numpy as np
from pymoo.util.nds.non_dominated_sorting import NonDominatedSorting


def dominates(a, b):
    """True iff a is no worse than b in every objective and better in one."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return bool(np.all(a <= b) and np.any(a < b))


def dominance_matrix(objectives):
    """Boolean matrix D with D[i, j] True iff solution i dominates solution j."""
    f = np.asarray(objectives, dtype=float)
    no_worse = np.all(f[:, None, :] <= f[None, :, :], axis=2)
    better = np.any(f[:, None, :] < f[None, :, :], axis=2)
    return no_worse & better


def fast_nondominated_sort(objectives):
    """Partition solutions into Pareto levels F1, F2, ...

    Args:
        objectives: (n, m) array

    Returns:
        list of index arrays, best level first; every index appears exactly once
    """
    f = np.asarray(objectives, dtype=float)
    if len(f) == 0:
        return []
    fronts = NonDominatedSorting().do(f)
    return [np.sort(np.asarray(front, dtype=int)) for front in fronts]


def nondominated_mask(objectives):
    """True for members of the first Pareto level."""
    f = np.asarray(objectives, dtype=float)
    if len(f) == 0:
        return np.zeros(0, dtype=bool)
    mask = np.zeros(len(f), dtype=bool)
    mask[NonDominatedSorting().do(f, only_non_dominated_front=True)] = True
    return mask


def crowding_distance(objectives):
    """Crowding distance of each member of one front; boundary members get inf."""
    f = np.asarray(objectives, dtype=float)
    n = len(f)
    distance = np.zeros(n)
    if n <= 2:
        distance[:] = np.inf
        return distance
    for k in range(f.shape[1]):
        order = np.argsort(f[:, k], kind='stable')
        values = f[order, k]
        distance[order[0]] = distance[order[-1]] = np.inf
        span = values[-1] - values[0]
        if span <= 0:
            continue
        distance[order[1:-1]] += (values[2:] - values[:-2]) / span
    return distance
