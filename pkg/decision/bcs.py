"""
Best compromise solution (BCS) selection: fuzzy clustering of the archive into
preference groups, then grey relation projection ranking; the top-ranked member
of each group is its BCS.
"""

from dataclasses import dataclass, field
import logging

import numpy as np

from decision.fcm import fcm_cluster
from decision.grey_projection import grey_relation_coefficients, relative_projection, standardize_matrix
from models.errors import ParameterError

logger = logging.getLogger(__name__)


@dataclass
class SchemeScore:
    solution: object
    grc_plus: np.ndarray
    grc_minus: np.ndarray
    prj_plus: float
    prj_minus: float
    rp: float


@dataclass
class ClusterReport:
    """Ranked schemes of one preference cluster (RP descending, cost ascending on ties)."""

    label: int
    center: np.ndarray
    schemes: list

    @property
    def best(self):
        return self.schemes[0]


@dataclass
class BcsReport:
    """Clusters labelled 1.. by ascending center cost, plus the archive extremes."""

    clusters: list
    fcm: object = None
    extremes: tuple = field(default=(None, None))

    @property
    def bcs(self):
        """Top solution of each cluster, BCS 1 first."""
        return [cluster.best.solution for cluster in self.clusters]


def score_schemes(solutions, weights=None, resolution=0.5):
    """Relative projection of every scheme against the ideal schemes of this set.

    Returns:
        list of SchemeScore in input order
    """
    objectives = np.array([s.objectives for s in solutions]).reshape(len(solutions), 2)
    std, _ = standardize_matrix(objectives)
    grc_plus, grc_minus = grey_relation_coefficients(std, resolution)
    rp, prj_plus, prj_minus = relative_projection(grc_plus, grc_minus, weights)
    return [SchemeScore(s, grc_plus[i], grc_minus[i], float(prj_plus[i]), float(prj_minus[i]), float(rp[i]))
            for i, s in enumerate(solutions)]


def _ordered(scores):
    return sorted(scores, key=lambda score: (-score.rp, score.solution.cost, score.solution.emission))


def rank_schemes(solutions, weights=None, resolution=0.5):
    """Score and order schemes by relative projection.

    Returns:
        list of SchemeScore, RP descending, ties to lower cost
    """
    return _ordered(score_schemes(solutions, weights, resolution))


def select_bcs(archive, config):
    """Pick one best compromise solution per preference cluster.

    Args:
        archive: ParetoArchive (or any sequence of DispatchSolution)
        config: RunConfig (fcm, grp and seed are used)

    Returns:
        BcsReport

    Raises:
        ParameterError: empty archive
    """
    solutions = sorted(archive, key=lambda s: (s.cost, s.emission))
    if not solutions:
        raise ParameterError("cannot select a compromise solution from an empty archive")
    extremes = (solutions[0], min(solutions, key=lambda s: (s.emission, s.cost)))
    weights = config.grp.weights
    resolution = config.grp.resolution

    objectives = np.array([s.objectives for s in solutions])
    low = objectives.min(axis=0)
    span = objectives.max(axis=0) - low
    normalized = (objectives - low) / np.where(span > 0, span, 1.0)

    n_clusters = config.fcm.n_clusters
    if len(solutions) <= n_clusters:
        # too few schemes to cluster: each is its own group
        groups = [[i] for i in range(len(solutions))]
        centers = [normalized[i] for i in range(len(solutions))]
        fcm = None
    else:
        fcm = fcm_cluster(normalized, n_clusters, config.fcm.fuzziness, config.fcm.epsilon,
                          config.fcm.max_iter, seed=config.seed)
        labels = fcm.labels
        groups, centers = [], []
        for k in range(n_clusters):
            members = np.nonzero(labels == k)[0].tolist()
            if not members:
                logger.warning("FCM cluster %d is empty, skipped", k)
                continue
            groups.append(members)
            centers.append(fcm.centers[k])

    archive_scores = None
    if config.grp.scope == 'archive':
        archive_scores = score_schemes(solutions, weights, resolution)

    order = sorted(range(len(groups)), key=lambda g: (centers[g][0], centers[g][1]))
    clusters = []
    for label, g in enumerate(order, start=1):
        if archive_scores is None:
            schemes = rank_schemes([solutions[i] for i in groups[g]], weights, resolution)
        else:
            schemes = _ordered([archive_scores[i] for i in groups[g]])
        clusters.append(ClusterReport(label, np.asarray(centers[g]), schemes))
        logger.info("BCS %d: cost %.4f, emission %.6f (RP %.4f, %d schemes)", label,
                    schemes[0].solution.cost, schemes[0].solution.emission, schemes[0].rp, len(schemes))
    return BcsReport(clusters, fcm, extremes)
