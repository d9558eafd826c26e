"""
Ramp-rate limits between consecutive intervals of a dynamic dispatch.
"""

from dataclasses import dataclass

import numpy as np

from constants import BOUND_TOL
from models.errors import StructuralError


@dataclass
class RampReport:
    """Ramp excursions per interval transition and power-only unit.

    Attributes:
        up: (N_T - 1, N_p) array of max(0, P_t - P_{t-1} - UR)
        down: (N_T - 1, N_p) array of max(0, P_{t-1} - P_t - DR)
    """

    up: np.ndarray
    down: np.ndarray

    @property
    def feasible(self):
        return self.worst <= BOUND_TOL

    @property
    def worst(self):
        values = [0.0]
        if self.up.size:
            values.append(float(self.up.max()))
        if self.down.size:
            values.append(float(self.down.max()))
        return max(values)


def check_ramp(case, schedule):
    """Ramp residuals of a per-interval schedule.

    Args:
        case: DispatchCase
        schedule: sequence of DispatchVars, one per interval

    Returns:
        RampReport
    """
    if len(schedule) != case.n_intervals:
        raise StructuralError(f"schedule has {len(schedule)} intervals, case has {case.n_intervals}")
    if case.n_intervals > 1 and not all(u.has_ramp for u in case.power_units):
        raise StructuralError("ramp limits missing on a multi-interval case")

    outputs = np.array([d.p for d in schedule], dtype=float).reshape(len(schedule), case.n_p)
    if case.n_intervals < 2:
        empty = np.zeros((0, case.n_p))
        return RampReport(empty, empty.copy())
    ramp_up = np.array([u.ramp_up for u in case.power_units], dtype=float)
    ramp_down = np.array([u.ramp_down for u in case.power_units], dtype=float)
    step = np.diff(outputs, axis=0)
    up = np.maximum(0.0, step - ramp_up)
    down = np.maximum(0.0, -step - ramp_down)
    return RampReport(up, down)


def ramp_window(case, previous):
    """Power-only bounds for the next interval: unit limits intersected with
    [P_prev - DR, P_prev + UR].

    Args:
        case: DispatchCase
        previous: DispatchVars of the previous interval, or None for the first

    Returns:
        (lower, upper) arrays
    """
    lower, upper = case.power_bounds_array
    lower, upper = lower.copy(), upper.copy()
    if previous is None:
        return lower, upper
    for i, unit in enumerate(case.power_units):
        if unit.has_ramp:
            lower[i] = max(lower[i], previous.p[i] - unit.ramp_down)
            upper[i] = min(upper[i], previous.p[i] + unit.ramp_up)
    return lower, upper
