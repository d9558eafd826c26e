"""
DispatchCase: the full problem instance handed to evaluators and optimizers.
"""

from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np

from models.errors import CaseValidationError
from models.units import LossModel


@dataclass(frozen=True)
class DispatchCase:
    """Units, loss model and (possibly per-interval) demand of one dispatch problem.

    Unit numbering follows the case tables: power-only units first, then CHP
    units, then heat-only units, counted from 1.
    """

    power_units: tuple = ()
    chp_units: tuple = ()
    heat_units: tuple = ()
    p_demand: tuple = (0.0,)
    h_demand: tuple = (0.0,)
    loss: LossModel = field(default_factory=LossModel.absent)
    name: str = ''

    @property
    def n_p(self):
        return len(self.power_units)

    @property
    def n_c(self):
        return len(self.chp_units)

    @property
    def n_h(self):
        return len(self.heat_units)

    @property
    def n_electric(self):
        return self.n_p + self.n_c

    @property
    def n_intervals(self):
        return len(self.p_demand)

    @property
    def is_dynamic(self):
        return self.n_intervals > 1

    def power_demand(self, interval=0):
        return float(self.p_demand[interval])

    def heat_demand(self, interval=0):
        return float(self.h_demand[interval])

    @cached_property
    def unit_numbers(self):
        """Global 1-based unit numbers: (power-only, CHP, heat-only)."""
        power = list(range(1, self.n_p + 1))
        chp = list(range(self.n_p + 1, self.n_p + self.n_c + 1))
        heat = list(range(self.n_p + self.n_c + 1, self.n_p + self.n_c + self.n_h + 1))
        return power, chp, heat

    @cached_property
    def variable_labels(self):
        """Column labels in DispatchVars order: P for power, H for heat, by unit number."""
        power, chp, heat = self.unit_numbers
        labels = [f"P{k}" for k in power]
        labels += [f"P{k}" for k in chp]
        labels += [f"H{k}" for k in chp]
        labels += [f"H{k}" for k in heat]
        return labels

    def power_capacity(self):
        """(min, max) aggregate electrical output over power-only and CHP units."""
        low = sum(u.p_min for u in self.power_units) + sum(u.power_bounds[0] for u in self.chp_units)
        high = sum(u.p_max for u in self.power_units) + sum(u.power_bounds[1] for u in self.chp_units)
        return low, high

    def heat_capacity(self):
        """(min, max) aggregate heat output over CHP and heat-only units."""
        low = sum(u.heat_bounds[0] for u in self.chp_units) + sum(u.h_min for u in self.heat_units)
        high = sum(u.heat_bounds[1] for u in self.chp_units) + sum(u.h_max for u in self.heat_units)
        return low, high

    def validation_problems(self):
        """All invariant violations of the case, never stopping at the first.

        Returns:
            list of "<field path>: <message>" strings
        """
        problems = []
        for i, unit in enumerate(self.power_units):
            problems.extend(unit.validation_problems(f"power_units[{i}]"))
        for j, unit in enumerate(self.chp_units):
            problems.extend(unit.validation_problems(f"chp_units[{j}]"))
        for k, unit in enumerate(self.heat_units):
            problems.extend(unit.validation_problems(f"heat_units[{k}]"))
        problems.extend(self.loss.validation_problems('loss', self.n_electric))

        if self.n_electric < 1:
            problems.append("power_units: at least one power-only or CHP unit is required")
        if len(self.p_demand) < 1:
            problems.append("demand.p_demand_mw: at least one interval is required")
        if len(self.h_demand) != len(self.p_demand):
            problems.append(
                f"demand.h_demand_mwth: profile length {len(self.h_demand)} does not match "
                f"p_demand_mw length {len(self.p_demand)}")
        for t, value in enumerate(self.p_demand):
            if not math.isfinite(value) or value < 0:
                problems.append(f"demand.p_demand_mw[{t}]: must be a finite value >= 0")
        for t, value in enumerate(self.h_demand):
            if not math.isfinite(value) or value < 0:
                problems.append(f"demand.h_demand_mwth[{t}]: must be a finite value >= 0")
        if any(h > 0 for h in self.h_demand) and self.n_c + self.n_h < 1:
            problems.append("heat_units: heat demand needs at least one CHP or heat-only unit")
        if self.is_dynamic:
            for i, unit in enumerate(self.power_units):
                if not unit.has_ramp:
                    problems.append(
                        f"power_units[{i}].ramp_up_mw: ramp limits are required when n_intervals > 1")
        return problems

    def validate(self):
        """Raise CaseValidationError listing every problem, or return self."""
        problems = self.validation_problems()
        if problems:
            raise CaseValidationError(problems)
        return self

    @cached_property
    def power_bounds_array(self):
        """(lower, upper) arrays of power-only unit limits."""
        lower = np.array([u.p_min for u in self.power_units], dtype=float)
        upper = np.array([u.p_max for u in self.power_units], dtype=float)
        return lower, upper

    @cached_property
    def heat_bounds_array(self):
        """(lower, upper) arrays of heat-only unit limits."""
        lower = np.array([u.h_min for u in self.heat_units], dtype=float)
        upper = np.array([u.h_max for u in self.heat_units], dtype=float)
        return lower, upper
