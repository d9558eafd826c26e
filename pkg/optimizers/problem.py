"""
Dispatch problem seen by the optimizers: a real decision vector of the free
unit outputs, decoded into DispatchVars and repaired onto the balance manifold.

Free variables, in order: power-only outputs except the power slack, CHP powers,
CHP heats, heat-only outputs except the heat slack. The slacks are set by repair.
"""

from dataclasses import dataclass
import logging

import numpy as np

from constants import PENALTY_WEIGHT, POWER_REPAIR_TOL_MW, REPAIR_MAX_ITER
from models.dispatch_solution import DispatchVars
from models.errors import InfeasibleCaseError
from models.evaluation import evaluate
from models.feasible_region import project_all
from models.repair import balance_dispatch

logger = logging.getLogger(__name__)


def widest_unit(lower, upper):
    """Index of the widest [lower, upper] range (lowest index on ties), or None if empty."""
    if len(lower) == 0:
        return None
    return int(np.argmax(np.asarray(upper) - np.asarray(lower)))


class DispatchProblem:
    """One interval of a dispatch case as a box-bounded real-coded problem.

    Args:
        case: DispatchCase
        interval: demand interval
        p_lower, p_upper: power-only bounds (ramp windows); unit limits when None
        penalty_weight: weight of the quadratic balance penalty
        repair_max_iter, repair_tol: power-balance repair settings
    """

    def __init__(self, case, interval=0, p_lower=None, p_upper=None, penalty_weight=PENALTY_WEIGHT,
                 repair_max_iter=REPAIR_MAX_ITER, repair_tol=POWER_REPAIR_TOL_MW):
        self.case = case
        self.interval = interval
        if p_lower is None or p_upper is None:
            p_lower, p_upper = case.power_bounds_array
        self.p_lower = np.asarray(p_lower, dtype=float).copy()
        self.p_upper = np.asarray(p_upper, dtype=float).copy()
        self.penalty_weight = penalty_weight
        self.repair_max_iter = repair_max_iter
        self.repair_tol = repair_tol

        h_lower, h_upper = case.heat_bounds_array
        self.power_slack = widest_unit(self.p_lower, self.p_upper)
        self.heat_slack = widest_unit(h_lower, h_upper)
        self.free_power = [i for i in range(case.n_p) if i != self.power_slack]
        self.free_heat = [k for k in range(case.n_h) if k != self.heat_slack]

        chp_p = np.array([u.power_bounds for u in case.chp_units], dtype=float).reshape(-1, 2)
        chp_h = np.array([u.heat_bounds for u in case.chp_units], dtype=float).reshape(-1, 2)
        self.lower = np.concatenate([self.p_lower[self.free_power], chp_p[:, 0], chp_h[:, 0],
                                     h_lower[self.free_heat]])
        self.upper = np.concatenate([self.p_upper[self.free_power], chp_p[:, 1], chp_h[:, 1],
                                     h_upper[self.free_heat]])

    @classmethod
    def from_config(cls, case, config, interval=0, p_lower=None, p_upper=None):
        return cls(case, interval, p_lower, p_upper, penalty_weight=config.penalty_weight,
                   repair_max_iter=config.repair.max_iter, repair_tol=config.repair.tolerance_mw)

    @property
    def n_variables(self):
        return len(self.lower)

    def check_capacity(self):
        """Raise InfeasibleCaseError when demand lies outside aggregate capacity.

        Power capacity uses the (possibly ramp-tightened) power-only bounds and the
        CHP power extents; loss is not included.
        """
        case = self.case
        p_low = float(self.p_lower.sum()) + sum(u.power_bounds[0] for u in case.chp_units)
        p_high = float(self.p_upper.sum()) + sum(u.power_bounds[1] for u in case.chp_units)
        h_low, h_high = case.heat_capacity()
        p_demand = case.power_demand(self.interval)
        h_demand = case.heat_demand(self.interval)
        problems = []
        if not p_low <= p_demand <= p_high:
            problems.append(
                f"power demand {p_demand:g} MW outside capacity [{p_low:g}, {p_high:g}] MW")
        if not h_low <= h_demand <= h_high:
            problems.append(
                f"heat demand {h_demand:g} MWth outside capacity [{h_low:g}, {h_high:g}] MWth")
        if problems:
            raise InfeasibleCaseError(f"interval {self.interval}: " + "; ".join(problems))

    def decode(self, x):
        """DispatchVars for a decision vector; slacks start mid-range."""
        case = self.case
        x = np.asarray(x, dtype=float)
        n_fp, n_c = len(self.free_power), case.n_c
        d = DispatchVars.zeros(case)
        d.p[self.free_power] = x[:n_fp]
        d.op[:] = x[n_fp:n_fp + n_c]
        d.hp[:] = x[n_fp + n_c:n_fp + 2 * n_c]
        d.th[self.free_heat] = x[n_fp + 2 * n_c:]
        if self.power_slack is not None:
            s = self.power_slack
            d.p[s] = 0.5 * (self.p_lower[s] + self.p_upper[s])
        if self.heat_slack is not None:
            unit = case.heat_units[self.heat_slack]
            d.th[self.heat_slack] = 0.5 * (unit.h_min + unit.h_max)
        return d

    def encode(self, dispatch):
        return np.concatenate([dispatch.p[self.free_power], dispatch.op, dispatch.hp,
                               dispatch.th[self.free_heat]])

    def repair(self, dispatch):
        """Project CHP points into their FOR, then balance heat and power.

        Returns:
            (DispatchVars, BalanceOutcome)
        """
        projected = project_all(self.case, dispatch.copy())
        return balance_dispatch(self.case, projected, self.interval, self.p_lower, self.p_upper,
                                self.power_slack, self.heat_slack, self.repair_max_iter, self.repair_tol)

    def evaluate_dispatch(self, dispatch, repair_failed=False):
        return evaluate(self.case, dispatch, self.interval, self.p_lower, self.p_upper,
                        self.penalty_weight, repair_failed)

    def evaluate_vector(self, x):
        """Decode, repair and evaluate one decision vector.

        Returns:
            (repaired decision vector, DispatchSolution)
        """
        dispatch, outcome = self.repair(self.decode(np.clip(x, self.lower, self.upper)))
        solution = self.evaluate_dispatch(dispatch, outcome.failed)
        if not solution.feasible:
            logger.debug("Repair left an infeasible dispatch (residuals %.3g MW, %.3g MWth)",
                         solution.report.power_residual, solution.report.heat_residual)
        return self.encode(dispatch), solution

    def evaluate_population(self, X):
        """Evaluate every row of X.

        Returns:
            Population with the repaired decision vectors
        """
        rows, solutions = [], []
        for x in np.atleast_2d(X):
            repaired, solution = self.evaluate_vector(x)
            rows.append(repaired)
            solutions.append(solution)
        return Population(np.array(rows).reshape(len(rows), self.n_variables), solutions)

    def initial_population(self, size, rng):
        """Uniform random decision vectors within bounds, repaired and evaluated."""
        X = rng.uniform(self.lower, self.upper, size=(size, self.n_variables))
        return self.evaluate_population(X)


@dataclass
class Population:
    """Decision vectors and their evaluated solutions, row-aligned."""

    X: np.ndarray
    solutions: list

    def __len__(self):
        return len(self.solutions)

    @property
    def F(self):
        """Penalized objectives (n, 2) used for selection."""
        if not self.solutions:
            return np.zeros((0, 2))
        return np.array([s.fitness for s in self.solutions])

    def take(self, indices):
        indices = np.asarray(indices, dtype=int)
        return Population(self.X[indices], [self.solutions[i] for i in indices])

    @staticmethod
    def merge(a, b):
        return Population(np.vstack([a.X, b.X]), a.solutions + b.solutions)
