"""
Feasible operation region (FOR) checks for CHP units.
"""

import numpy as np

from constants import FOR_TOL
from utils import polygon


def for_contains(unit, point, tol=FOR_TOL):
    """True iff (power, heat) lies inside or on the unit's FOR within tol."""
    return polygon.contains(unit.vertices, point, tol)


def project_into_for(unit, point):
    """Euclidean-nearest point of the unit's FOR; interior points are returned unchanged.

    Args:
        unit: ChpUnit
        point: (power MW, heat MWth)

    Returns:
        (power, heat) tuple of floats
    """
    projected = polygon.project(unit.vertices, np.asarray(point, dtype=float))
    return float(projected[0]), float(projected[1])


def project_all(case, dispatch):
    """Project every CHP operating point of a dispatch into its FOR, in place."""
    for j, unit in enumerate(case.chp_units):
        dispatch.op[j], dispatch.hp[j] = project_into_for(unit, (dispatch.op[j], dispatch.hp[j]))
    return dispatch
