"""
Front quality indicators: inverted generational distance and Spread.

Both work on raw objective units (cost, emission); smaller is better.
"""

import logging

import numpy as np
from pymoo.indicators.igd import IGD

from models.errors import ParameterError
from optimizers.sorting import nondominated_mask

logger = logging.getLogger(__name__)


def _points(values, name):
    points = np.atleast_2d(np.asarray(values, dtype=float))
    if points.size == 0:
        raise ParameterError(f"{name}: point set is empty")
    return points


def igd(reference, front):
    """Mean distance from every reference point to its nearest front point.

    Raises:
        ParameterError: either set is empty
    """
    reference = _points(reference, 'reference')
    front = _points(front, 'front')
    return float(IGD(reference).do(front))


def spread_details(front, extremes):
    """Spread of a front and whether its mean gap was zero.

    Args:
        front: (n, 2) points, n >= 2; sorted by the first objective here
        extremes: two extreme points; the one with the lower first objective is
            matched to the front's first boundary point

    Returns:
        (spread, degenerate) with spread = 0 when degenerate
    """
    front = _points(front, 'front')
    if len(front) < 2:
        raise ParameterError(f"front: spread needs at least 2 points, got {len(front)}")
    extremes = _points(extremes, 'extremes')
    if len(extremes) != 2:
        raise ParameterError(f"extremes: expected 2 points, got {len(extremes)}")

    front = front[np.lexsort(front.T[::-1])]
    extremes = extremes[np.lexsort(extremes.T[::-1])]
    gaps = np.linalg.norm(np.diff(front, axis=0), axis=1)
    mean = gaps.mean()
    if mean == 0:
        logger.debug("All front points coincide, spread taken as 0")
        return 0.0, True
    edis1 = float(np.linalg.norm(front[0] - extremes[0]))
    edis2 = float(np.linalg.norm(front[-1] - extremes[1]))
    numerator = edis1 + edis2 + float(np.abs(gaps - mean).sum())
    denominator = edis1 + edis2 + (len(front) - 1) * mean
    return numerator / denominator, False


def spread(front, extremes):
    """Spread (gap uniformity including boundary distances to the extremes)."""
    return spread_details(front, extremes)[0]


def pooled_reference_front(fronts):
    """Nondominated subset of the union of fronts, unique rows sorted by first objective.

    Raises:
        ParameterError: no fronts given, or all are empty
    """
    parts = [np.atleast_2d(np.asarray(f, dtype=float)) for f in fronts]
    parts = [p for p in parts if p.size]
    if not parts:
        raise ParameterError("at least one nonempty front is required")
    union = np.unique(np.vstack(parts), axis=0)
    pooled = union[nondominated_mask(union)]
    return pooled[np.lexsort(pooled.T[::-1])]


def front_extremes(front):
    """Boundary points (lowest first objective, lowest second objective)."""
    front = _points(front, 'front')
    first = front[np.lexsort(front.T[::-1])][0]
    second = front[np.lexsort(front.T)][0]
    return np.vstack([first, second])
