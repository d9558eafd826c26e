"""
Fuzzy c-means clustering of objective vectors.
"""

from dataclasses import dataclass, field
import logging

import numpy as np
from scipy.spatial.distance import cdist

from constants import FCM_CLUSTERS, FCM_EPSILON, FCM_FUZZINESS, FCM_MAX_ITER
from models.errors import DegenerateInputError, ParameterError

logger = logging.getLogger(__name__)


@dataclass
class FcmResult:
    """Memberships U (n x c), centers V (c x d), final loss J and the loss history."""

    membership: np.ndarray
    centers: np.ndarray
    loss: float
    iterations: int
    history: list = field(default_factory=list)

    @property
    def labels(self):
        """Hard assignment: largest membership, lowest cluster index on ties."""
        return np.argmax(self.membership, axis=1)


def _memberships(distances, m):
    """Membership update for fixed centers; a point sitting on centers splits among them."""
    n, c = distances.shape
    u = np.zeros((n, c))
    on_center = distances == 0
    hit = on_center.any(axis=1)
    if hit.any():
        u[hit] = on_center[hit] / on_center[hit].sum(axis=1, keepdims=True)
    rest = ~hit
    if rest.any():
        d = distances[rest]
        ratio = (d[:, :, None] / d[:, None, :]) ** (2.0 / (m - 1.0))
        u[rest] = 1.0 / ratio.sum(axis=2)
    return u


def _centers(points, u, m, previous=None):
    weights = u ** m
    totals = weights.sum(axis=0)
    centers = (weights.T @ points) / np.where(totals > 0, totals, 1.0)[:, None]
    empty = totals <= 0
    if empty.any():
        logger.warning("FCM cluster(s) %s received no membership, keeping previous centers",
                       np.nonzero(empty)[0].tolist())
        if previous is not None:
            centers[empty] = previous[empty]
    return centers


def _loss(points, centers, u, m):
    return float(np.sum((u ** m) * cdist(points, centers, 'sqeuclidean')))


def _iterate(points, u, m, epsilon, max_iter):
    centers = None
    history = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        centers = _centers(points, u, m, centers)
        u = _memberships(cdist(points, centers), m)
        history.append(_loss(points, centers, u, m))
        if len(history) > 1 and abs(history[-1] - history[-2]) < epsilon:
            break
    return FcmResult(u, centers, history[-1], iterations, history)


def fcm_cluster(points, n_clusters=FCM_CLUSTERS, m=FCM_FUZZINESS, epsilon=FCM_EPSILON,
                max_iter=FCM_MAX_ITER, seed=None, allow_degenerate=False):
    """Cluster points by fuzzy c-means.

    Two starts are run: memberships drawn from the seeded generator, and centers
    placed on the per-objective minimizers. The lower final loss wins.

    Args:
        points: (n, d) array, normally min-max normalized objectives
        n_clusters: number of clusters c
        m: fuzziness exponent, > 1
        epsilon: stop when the loss changes by less than this
        max_iter: iteration cap
        seed: int or numpy Generator for the random start
        allow_degenerate: with fewer distinct points than clusters, return
            coincident centers instead of raising

    Returns:
        FcmResult

    Raises:
        DegenerateInputError: fewer distinct points than clusters
        ParameterError: invalid m, n_clusters or max_iter
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if n_clusters < 1 or max_iter < 1 or m <= 1:
        raise ParameterError(f"invalid FCM parameters: n_clusters={n_clusters}, m={m}, max_iter={max_iter}")
    n = len(points)
    distinct = len(np.unique(points, axis=0)) if n else 0
    if distinct < n_clusters:
        if not allow_degenerate or n == 0:
            raise DegenerateInputError(
                f"FCM needs at least {n_clusters} distinct points, got {distinct}")
        center = points.mean(axis=0)
        centers = np.tile(center, (n_clusters, 1))
        u = np.full((n, n_clusters), 1.0 / n_clusters)
        return FcmResult(u, centers, _loss(points, centers, u, m), 0, [])

    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    u0 = rng.random((n, n_clusters))
    u0 /= u0.sum(axis=1, keepdims=True)
    best = _iterate(points, u0, m, epsilon, max_iter)

    anchors = [int(np.argmin(points[:, k % points.shape[1]])) for k in range(n_clusters)]
    if len(set(anchors)) == n_clusters:
        start = _memberships(cdist(points, points[anchors]), m)
        restart = _iterate(points, start, m, epsilon, max_iter)
        if restart.loss < best.loss:
            best = restart
    logger.debug("FCM converged in %d iterations, loss %.6g", best.iterations, best.loss)
    return best
