"""
Objective and constraint evaluation for a dispatch.

Cost, emission and loss are pure functions of (case, decision variables):
repeated calls return bit-identical values.
"""

import logging

import numpy as np

from constants import PENALTY_WEIGHT
from models.dispatch_solution import DispatchSolution, FeasibilityReport
from models.errors import DomainError, StructuralError
from utils import polygon

logger = logging.getLogger(__name__)


def check_dimensions(case, dispatch):
    """Raise StructuralError if the decision variables do not fit the case,
    DomainError if any of them is not finite."""
    expected = (('p', case.n_p), ('op', case.n_c), ('hp', case.n_c), ('th', case.n_h))
    for name, size in expected:
        values = getattr(dispatch, name)
        if values.shape != (size,):
            raise StructuralError(f"{name}: expected {size} values, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise DomainError(f"{name}: decision variables must be finite")


def evaluate_cost(case, dispatch):
    """Total fuel cost C_Total of all units (currency)."""
    check_dimensions(case, dispatch)
    total = 0.0
    for unit, p in zip(case.power_units, dispatch.p):
        total += float(unit.cost(p))
    for unit, o, h in zip(case.chp_units, dispatch.op, dispatch.hp):
        total += float(unit.cost(o, h))
    for unit, t in zip(case.heat_units, dispatch.th):
        total += float(unit.cost(t))
    return total


def emission_parts(case, dispatch):
    """(E_S, E_C): SO2/NOx emission and CO2 emission in kg."""
    check_dimensions(case, dispatch)
    e_s = e_c = 0.0
    for unit, p in zip(case.power_units, dispatch.p):
        e_s += float(unit.emission_s(p))
        e_c += float(unit.emission_c(p))
    for unit, o in zip(case.chp_units, dispatch.op):
        e_s += float(unit.emission_s(o))
        e_c += float(unit.emission_c(o))
    for unit, t in zip(case.heat_units, dispatch.th):
        e_s += float(unit.emission_s(t))
        e_c += float(unit.emission_c(t))
    return e_s, e_c


def evaluate_emission(case, dispatch):
    """Total emission E_Total = E_S + E_C (kg)."""
    e_s, e_c = emission_parts(case, dispatch)
    return e_s + e_c


def transmission_loss(case, powers):
    """Network loss P_L (MW) for electrical outputs ordered power-only then CHP.

    Returns 0.0 when the case carries no loss model.
    """
    powers = np.asarray(powers, dtype=float)
    if powers.shape != (case.n_electric,):
        raise StructuralError(f"powers: expected {case.n_electric} values, got shape {powers.shape}")
    if not np.all(np.isfinite(powers)):
        raise DomainError("powers: values must be finite")
    if not case.loss.present:
        logger.debug("No loss model in case %r, transmission loss taken as 0", case.name)
        return 0.0
    return case.loss.loss(powers)


def power_residual(case, dispatch, interval=0, loss=None):
    """P_D + P_L - sum of electrical outputs; positive means a shortfall."""
    if loss is None:
        loss = transmission_loss(case, dispatch.powers)
    return case.power_demand(interval) + loss - float(dispatch.p.sum() + dispatch.op.sum())


def heat_residual(case, dispatch, interval=0):
    """H_D - sum of heat outputs; positive means a shortfall."""
    return case.heat_demand(interval) - float(dispatch.hp.sum() + dispatch.th.sum())


def bound_violation(case, dispatch, p_lower=None, p_upper=None):
    """Largest excursion of a power-only or heat-only output beyond its limits."""
    if p_lower is None or p_upper is None:
        p_lower, p_upper = case.power_bounds_array
    h_lower, h_upper = case.heat_bounds_array
    worst = 0.0
    if case.n_p:
        worst = max(worst, float(np.max(p_lower - dispatch.p)), float(np.max(dispatch.p - p_upper)))
    if case.n_h:
        worst = max(worst, float(np.max(h_lower - dispatch.th)), float(np.max(dispatch.th - h_upper)))
    return max(worst, 0.0)


def feasibility_report(case, dispatch, interval=0, p_lower=None, p_upper=None, loss=None):
    """Residuals of every constraint for one interval.

    Args:
        case: DispatchCase
        dispatch: DispatchVars
        interval: demand interval
        p_lower, p_upper: optional tightened power-only bounds (ramp windows)
        loss: precomputed transmission loss

    Returns:
        FeasibilityReport
    """
    for_violation = np.array([
        polygon.distance_outside(unit.vertices, (o, h))
        for unit, o, h in zip(case.chp_units, dispatch.op, dispatch.hp)
    ])
    return FeasibilityReport(
        power_residual=power_residual(case, dispatch, interval, loss),
        heat_residual=heat_residual(case, dispatch, interval),
        for_violation=for_violation,
        bound_violation=bound_violation(case, dispatch, p_lower, p_upper),
    )


def penalty_for(report, weight=PENALTY_WEIGHT):
    """Quadratic balance penalty added to both objectives of an infeasible dispatch."""
    if report.feasible:
        return 0.0
    violation = (report.power_residual ** 2 + report.heat_residual ** 2
                 + float(np.sum(report.for_violation ** 2)) + report.bound_violation ** 2)
    return weight * violation


def evaluate(case, dispatch, interval=0, p_lower=None, p_upper=None,
             penalty_weight=PENALTY_WEIGHT, repair_failed=False):
    """Evaluate objectives and constraints of a dispatch.

    Returns:
        DispatchSolution whose cost/emission equal evaluate_cost/evaluate_emission
    """
    cost = evaluate_cost(case, dispatch)
    e_s, e_c = emission_parts(case, dispatch)
    loss = transmission_loss(case, dispatch.powers)
    report = feasibility_report(case, dispatch, interval, p_lower, p_upper, loss)
    report.repair_failed = repair_failed
    penalty = penalty_for(report, penalty_weight)
    if penalty:
        logger.debug("Penalty %.3g applied (power residual %.3g MW, heat residual %.3g MWth)",
                     penalty, report.power_residual, report.heat_residual)
    return DispatchSolution(
        vars=dispatch,
        cost=cost,
        emission=e_s + e_c,
        loss=loss,
        report=report,
        emission_s=e_s,
        emission_c=e_c,
        penalty=penalty,
        interval=interval,
    )
