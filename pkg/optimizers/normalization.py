"""
Ideal/nadir anchors and objective normalization.
"""

from dataclasses import dataclass
import logging

import numpy as np

from constants import MIN_ANCHOR_SPAN

logger = logging.getLogger(__name__)


@dataclass
class NormalizationAnchors:
    """Ideal point (running minima) and nadir estimate (maxima of the first Pareto level)."""

    ideal: np.ndarray
    nadir: np.ndarray

    @classmethod
    def from_objectives(cls, objectives, first_front):
        objectives = np.asarray(objectives, dtype=float)
        ideal = objectives.min(axis=0)
        nadir = objectives[first_front].max(axis=0)
        return cls(ideal, np.maximum(nadir, ideal))

    def update(self, objectives, first_front):
        """Lower the ideal with new objectives and re-estimate the nadir."""
        objectives = np.asarray(objectives, dtype=float)
        self.ideal = np.minimum(self.ideal, objectives.min(axis=0))
        self.nadir = np.maximum(objectives[first_front].max(axis=0), self.ideal)
        return self

    @property
    def span(self):
        return self.nadir - self.ideal


def normalize(objectives, anchors):
    """Scale objectives to (f - ideal) / (nadir - ideal), clamped at 0.

    Works on a single pair or on an (n, m) array.

    Returns:
        (normalized array, degenerate) where degenerate is True when some anchor
        span was zero and MIN_ANCHOR_SPAN was used instead
    """
    objectives = np.asarray(objectives, dtype=float)
    span = anchors.span
    degenerate = bool(np.any(span <= 0))
    if degenerate:
        logger.debug("Degenerate anchor span %s, using %g", span, MIN_ANCHOR_SPAN)
        span = np.where(span <= 0, MIN_ANCHOR_SPAN, span)
    return np.maximum((objectives - anchors.ideal) / span, 0.0), degenerate
