"""
Equality-constraint repair: slack-unit balancing of power (with loss) and heat.

repair_power_balance / repair_heat_balance move one slack unit only.
balance_dispatch cascades any leftover residual over the remaining units so the
search stays on the feasible manifold as often as the unit limits allow.
"""

from dataclasses import dataclass
import logging

import numpy as np

from constants import (HEAT_BALANCE_TOL_MWTH, POWER_BALANCE_TOL_MW, POWER_REPAIR_TOL_MW,
                       REPAIR_DIVERGENCE_STREAK, REPAIR_MAX_ITER)
from models.errors import RepairFailedError, StructuralError
from models.evaluation import heat_residual, power_residual, transmission_loss

logger = logging.getLogger(__name__)


@dataclass
class RepairResult:
    """Outcome of a slack repair.

    Attributes:
        dispatch: repaired copy of the decision variables
        residual: balance residual after repair (MW or MWth)
        converged: residual within the repair tolerance
        clamped: the slack ended on one of its limits
        iterations: fixed-point iterations used
    """

    dispatch: object
    residual: float
    converged: bool
    clamped: bool = False
    iterations: int = 0


def _power_limits(case, index, lower, upper):
    if lower is None or upper is None:
        return case.power_units[index].p_min, case.power_units[index].p_max
    return float(lower[index]), float(upper[index])


def repair_power_balance(case, dispatch, slack_index, interval=0, lower=None, upper=None,
                         max_iter=REPAIR_MAX_ITER, tol=POWER_REPAIR_TOL_MW):
    """Solve the power-only slack from P_slack = P_D + P_L(all powers) - sum(other powers).

    Args:
        case: DispatchCase
        dispatch: DispatchVars (left untouched)
        slack_index: index of the slack among the power-only units
        interval: demand interval
        lower, upper: optional power-only bounds overriding the unit limits
        max_iter: fixed-point iteration cap
        tol: residual target (MW)

    Returns:
        RepairResult

    Raises:
        StructuralError: slack_index is not a power-only unit
        RepairFailedError: the residual grew for REPAIR_DIVERGENCE_STREAK iterations in a row
    """
    if not 0 <= slack_index < case.n_p:
        raise StructuralError(f"slack_index {slack_index} is not a power-only unit (N_p = {case.n_p})")

    result = dispatch.copy()
    lo, hi = _power_limits(case, slack_index, lower, upper)
    demand = case.power_demand(interval)
    residual = power_residual(case, result, interval)
    if abs(residual) <= tol:
        return RepairResult(result, residual, True, False, 0)

    previous = abs(residual)
    growth = 0
    clamped = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        others = float(result.p.sum() + result.op.sum()) - result.p[slack_index]
        target = demand + transmission_loss(case, result.powers) - others
        value = min(hi, max(lo, target))
        unchanged = value == result.p[slack_index]
        result.p[slack_index] = value
        clamped = value != target
        residual = power_residual(case, result, interval)

        if abs(residual) <= tol:
            return RepairResult(result, residual, True, clamped, iterations)
        if clamped and unchanged:
            break

        growth = growth + 1 if abs(residual) > previous else 0
        if growth >= REPAIR_DIVERGENCE_STREAK:
            raise RepairFailedError(
                f"power balance diverged at iteration {iterations} (residual {residual:.6g} MW)")
        previous = abs(residual)

    return RepairResult(result, residual, False, clamped, iterations)


def repair_heat_balance(case, dispatch, slack_index, interval=0, slack_kind='heat'):
    """Set the slack heat to H_D - sum(other heats), clamped to its limits.

    Args:
        slack_kind: 'heat' for a heat-only slack, 'chp' for a CHP slack whose
            power stays fixed (limits are then the FOR heat range at that power)

    Returns:
        RepairResult
    """
    result = dispatch.copy()
    demand = case.heat_demand(interval)
    if slack_kind == 'heat':
        if not 0 <= slack_index < case.n_h:
            raise StructuralError(f"slack_index {slack_index} is not a heat-only unit (N_h = {case.n_h})")
        unit = case.heat_units[slack_index]
        lo, hi = unit.h_min, unit.h_max
        others = float(result.hp.sum() + result.th.sum()) - result.th[slack_index]
    elif slack_kind == 'chp':
        if not 0 <= slack_index < case.n_c:
            raise StructuralError(f"slack_index {slack_index} is not a CHP unit (N_c = {case.n_c})")
        window = case.chp_units[slack_index].heat_range(result.op[slack_index])
        if window is None:
            raise StructuralError(
                f"CHP unit {slack_index} power {result.op[slack_index]} lies outside its FOR")
        lo, hi = window
        others = float(result.hp.sum() + result.th.sum()) - result.hp[slack_index]
    else:
        raise StructuralError(f"unknown slack kind {slack_kind!r}")

    target = demand - others
    value = min(hi, max(lo, target))
    if slack_kind == 'heat':
        result.th[slack_index] = value
    else:
        result.hp[slack_index] = value
    residual = heat_residual(case, result, interval)
    return RepairResult(result, residual, abs(residual) <= HEAT_BALANCE_TOL_MWTH, value != target, 1)


def _spread(values, index, lo, hi, amount):
    """Move values[index] by amount within [lo, hi]; return the part not absorbed."""
    old = values[index]
    new = min(hi, max(lo, old + amount))
    values[index] = new
    return amount - (new - old)


@dataclass
class BalanceOutcome:
    """Residuals left after balance_dispatch.

    failed is set when the cascade diverged or a residual stayed outside the
    balance tolerance; the evaluation then falls back to the penalty.
    """

    power_residual: float
    heat_residual: float
    failed: bool = False


def _balance_heat(case, result, interval, heat_slack):
    residual = heat_residual(case, result, interval)
    if heat_slack is not None and residual != 0:
        repaired = repair_heat_balance(case, result, heat_slack, interval)
        result.th[:] = repaired.dispatch.th
        residual = repaired.residual

    for k, unit in enumerate(case.heat_units):
        if abs(residual) <= HEAT_BALANCE_TOL_MWTH * 1e-3:
            break
        if k != heat_slack:
            _spread(result.th, k, unit.h_min, unit.h_max, residual)
            residual = heat_residual(case, result, interval)

    for j, unit in enumerate(case.chp_units):
        if abs(residual) <= HEAT_BALANCE_TOL_MWTH * 1e-3:
            break
        window = unit.heat_range(result.op[j])
        if window is not None:
            _spread(result.hp, j, window[0], window[1], residual)
            residual = heat_residual(case, result, interval)
    return residual


def _cascade_power(case, result, amount, power_slack, lower, upper):
    """Assign an electrical shortfall to the slack, then other power-only units, then CHP power."""
    order = list(range(case.n_p))
    if power_slack is not None:
        order.remove(power_slack)
        order.insert(0, power_slack)
    for i in order:
        if amount == 0:
            return
        lo, hi = _power_limits(case, i, lower, upper)
        amount = _spread(result.p, i, lo, hi, amount)
    for j, unit in enumerate(case.chp_units):
        if amount == 0:
            return
        window = unit.power_range(result.hp[j])
        if window is not None:
            amount = _spread(result.op, j, window[0], window[1], amount)


def balance_dispatch(case, dispatch, interval=0, lower=None, upper=None, power_slack=None,
                     heat_slack=None, max_iter=REPAIR_MAX_ITER, tol=POWER_REPAIR_TOL_MW):
    """Repair both balances, heat first, keeping every CHP point inside its FOR.

    CHP points must already lie inside their FOR (see feasible_region.project_all).

    Returns:
        (DispatchVars, BalanceOutcome)
    """
    result = dispatch.copy()
    h_res = _balance_heat(case, result, interval, heat_slack)

    failed = False
    if power_slack is not None:
        try:
            repaired = repair_power_balance(case, result, power_slack, interval, lower, upper, max_iter, tol)
            result = repaired.dispatch
        except RepairFailedError as e:
            logger.debug("Slack repair failed, cascading instead: %s", e)

    p_res = power_residual(case, result, interval)
    previous = abs(p_res)
    growth = 0
    for _ in range(max_iter):
        if abs(p_res) <= tol:
            break
        before = result.powers
        _cascade_power(case, result, p_res, power_slack, lower, upper)
        p_res = power_residual(case, result, interval)
        if np.array_equal(before, result.powers):
            break
        growth = growth + 1 if abs(p_res) > previous else 0
        if growth >= REPAIR_DIVERGENCE_STREAK:
            failed = True
            break
        previous = abs(p_res)

    if abs(p_res) > POWER_BALANCE_TOL_MW or abs(h_res) > HEAT_BALANCE_TOL_MWTH:
        failed = True
    if abs(p_res) > tol or abs(h_res) > HEAT_BALANCE_TOL_MWTH:
        logger.debug("Balance repair left residuals %.3g MW / %.3g MWth", p_res, h_res)
    return result, BalanceOutcome(p_res, h_res, failed)
