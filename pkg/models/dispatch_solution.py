"""
Decision variables, feasibility reports and evaluated dispatch solutions.
"""

from dataclasses import dataclass, field

import numpy as np

from constants import BOUND_TOL, FOR_TOL, HEAT_BALANCE_TOL_MWTH, POWER_BALANCE_TOL_MW


@dataclass
class DispatchVars:
    """Outputs of every unit for one interval.

    Attributes:
        p: power-only outputs (MW)
        op: CHP power outputs (MW)
        hp: CHP heat outputs (MWth)
        th: heat-only outputs (MWth)
    """

    p: np.ndarray
    op: np.ndarray
    hp: np.ndarray
    th: np.ndarray

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float)
        self.op = np.asarray(self.op, dtype=float)
        self.hp = np.asarray(self.hp, dtype=float)
        self.th = np.asarray(self.th, dtype=float)

    @classmethod
    def zeros(cls, case):
        return cls(np.zeros(case.n_p), np.zeros(case.n_c), np.zeros(case.n_c), np.zeros(case.n_h))

    def copy(self):
        return DispatchVars(self.p.copy(), self.op.copy(), self.hp.copy(), self.th.copy())

    @property
    def powers(self):
        """Electrical outputs in loss-model order: power-only, then CHP."""
        return np.concatenate([self.p, self.op])

    def as_row(self):
        """Flat row in DispatchCase.variable_labels order."""
        return np.concatenate([self.p, self.op, self.hp, self.th])

    @classmethod
    def from_row(cls, case, row):
        row = np.asarray(row, dtype=float)
        a, b, c = case.n_p, case.n_p + case.n_c, case.n_p + 2 * case.n_c
        return cls(row[:a], row[a:b], row[b:c], row[c:])

    def equals(self, other):
        return all(np.array_equal(x, y) for x, y in
                   ((self.p, other.p), (self.op, other.op), (self.hp, other.hp), (self.th, other.th)))


@dataclass
class FeasibilityReport:
    """Per-constraint residuals of one dispatch.

    Attributes:
        power_residual: P_D + P_L - sum of electrical outputs (MW)
        heat_residual: H_D - sum of heat outputs (MWth)
        for_violation: distance outside each CHP unit's FOR
        bound_violation: largest excursion beyond a power-only or heat-only limit
        repair_failed: the balance repair diverged or could not close a balance
    """

    power_residual: float = 0.0
    heat_residual: float = 0.0
    for_violation: np.ndarray = field(default_factory=lambda: np.zeros(0))
    bound_violation: float = 0.0
    repair_failed: bool = False

    @property
    def max_for_violation(self):
        return float(self.for_violation.max()) if len(self.for_violation) else 0.0

    @property
    def feasible(self):
        return (abs(self.power_residual) <= POWER_BALANCE_TOL_MW
                and abs(self.heat_residual) <= HEAT_BALANCE_TOL_MWTH
                and self.max_for_violation <= FOR_TOL
                and self.bound_violation <= BOUND_TOL)


@dataclass
class DispatchSolution:
    """One evaluated dispatch.

    cost and emission are the raw objective values of the decision variables;
    penalty is added to both only through `fitness`.
    """

    vars: DispatchVars
    cost: float
    emission: float
    loss: float
    report: FeasibilityReport
    emission_s: float = 0.0
    emission_c: float = 0.0
    penalty: float = 0.0
    interval: int = 0

    @property
    def feasible(self):
        return self.report.feasible

    @property
    def objectives(self):
        return np.array([self.cost, self.emission])

    @property
    def fitness(self):
        """Objectives seen by the optimizer (raw plus penalty)."""
        return np.array([self.cost + self.penalty, self.emission + self.penalty])
