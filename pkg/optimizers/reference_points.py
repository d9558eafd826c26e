"""
Simplex-lattice reference directions for the decomposition-based selection.
"""

from dataclasses import dataclass

import numpy as np
from pymoo.util.ref_dirs import get_reference_directions

from models.errors import ParameterError


@dataclass(frozen=True)
class ReferencePointSet:
    """Unit-simplex direction rows, one per reference line through the origin."""

    points: np.ndarray

    def __len__(self):
        return len(self.points)

    @property
    def n_objectives(self):
        return self.points.shape[1]

    @property
    def axis_mask(self):
        """True for directions lying on an objective axis."""
        return np.count_nonzero(self.points, axis=1) == 1


def das_dennis_points(divisions, m_objectives=2):
    """All lattice points of the unit simplex with denominator `divisions`.

    Args:
        divisions: lattice resolution, >= 1
        m_objectives: number of objectives

    Returns:
        ReferencePointSet with C(divisions + m - 1, m - 1) rows, first row on the f1 axis

    Raises:
        ParameterError: divisions < 1 or m_objectives < 1
    """
    if divisions < 1:
        raise ParameterError(f"divisions must be >= 1, got {divisions}")
    if m_objectives < 1:
        raise ParameterError(f"m_objectives must be >= 1, got {m_objectives}")

    if m_objectives == 1:
        points = np.ones((1, 1))
    else:
        points = get_reference_directions("das-dennis", m_objectives, n_partitions=divisions)
        # snap to the lattice so axis rows carry exact zeros
        points = np.round(np.asarray(points, dtype=float) * divisions) / divisions
    # descending in the first component: (1, 0), ..., (0, 1)
    order = np.lexsort(points.T[::-1])[::-1]
    points = np.ascontiguousarray(points[order])
    points.setflags(write=False)
    return ReferencePointSet(points)
