"""
Tests for DispatchCase in models/dispatch_case.py
"""

import math

import pytest

from conftest import make_small_case
from models.dispatch_case import DispatchCase
from models.errors import CaseValidationError
from models.units import LossModel


class TestDispatchCaseShape:
    """Tests for counts, numbering and labels"""

    def test_case1_counts(self, case1):
        """Case 1 has one power-only, three CHP and one heat-only unit"""
        assert (case1.n_p, case1.n_c, case1.n_h) == (1, 3, 1)
        assert case1.n_electric == 4
        assert not case1.is_dynamic

    def test_case2_counts(self, case2):
        """Case 2 has four power-only, two CHP and one heat-only unit"""
        assert (case2.n_p, case2.n_c, case2.n_h) == (4, 2, 1)
        assert case2.loss.present

    def test_unit_numbers(self, case1):
        """Numbering runs power-only, CHP, heat-only from 1"""
        assert case1.unit_numbers == ([1], [2, 3, 4], [5])

    def test_variable_labels(self, case1):
        """Labels follow DispatchVars row order"""
        assert case1.variable_labels == ['P1', 'P2', 'P3', 'P4', 'H2', 'H3', 'H4', 'H5']

    def test_capacity(self, case1):
        """Aggregate capacity sums unit limits and FOR extents"""
        low, high = case1.power_capacity()
        assert low == pytest.approx(35 + 40 + 10 + 81)
        assert high == pytest.approx(135 + 125.8 + 60 + 247)
        assert case1.heat_capacity() == (pytest.approx(0.0), pytest.approx(135.6 + 55 + 180 + 60))

    def test_dynamic(self, dynamic_case):
        """Three demand intervals make a dynamic case"""
        assert dynamic_case.n_intervals == 3
        assert dynamic_case.is_dynamic
        assert dynamic_case.power_demand(1) == 150.0
        assert dynamic_case.heat_demand(2) == 35.0


class TestDispatchCaseValidation:
    """Tests for validation_problems and validate"""

    def test_shipped_cases_valid(self, case1, case2):
        """Shipped cases validate cleanly"""
        assert case1.validation_problems() == []
        assert case2.validate() is case2

    def test_profile_length_mismatch(self):
        """Heat and power profiles must have the same length"""
        case = make_small_case(p_demand=(100.0, 110.0), h_demand=(30.0,))
        assert any(p.startswith('demand.h_demand_mwth') for p in case.validation_problems())

    def test_negative_and_nan_demand(self):
        """Demand values must be finite and nonnegative"""
        case = make_small_case(p_demand=(-1.0,), h_demand=(math.nan,))
        problems = case.validation_problems()
        assert 'demand.p_demand_mw[0]: must be a finite value >= 0' in problems
        assert 'demand.h_demand_mwth[0]: must be a finite value >= 0' in problems

    def test_dynamic_needs_ramp(self):
        """Multi-interval cases need ramp limits on every power-only unit"""
        case = make_small_case(p_demand=(100.0, 110.0), h_demand=(30.0, 30.0), ramp=False)
        problems = case.validation_problems()
        assert any(p.startswith('power_units[0].ramp_up_mw') for p in problems)
        assert any(p.startswith('power_units[1].ramp_up_mw') for p in problems)

    def test_heat_demand_without_heat_units(self):
        """Heat demand needs a CHP or heat-only unit"""
        small = make_small_case()
        case = DispatchCase(small.power_units, (), (), (100.0,), (10.0,), LossModel.absent(), 'no heat')
        assert any(p.startswith('heat_units') for p in case.validation_problems())

    def test_all_problems_reported(self):
        """validate collects every problem before raising"""
        small = make_small_case()
        bad_loss = LossModel(b_matrix=((1.0, 2.0), (3.0, 1.0)), b_linear=(0.0, 0.0), b_const=0.0)
        case = DispatchCase(small.power_units, small.chp_units, small.heat_units, (-5.0,), (30.0,),
                            bad_loss, 'bad')
        with pytest.raises(CaseValidationError) as exc_info:
            case.validate()
        errors = exc_info.value.errors
        assert any('dimension' in e for e in errors)
        assert any('symmetric' in e for e in errors)
        assert any(e.startswith('demand.p_demand_mw[0]') for e in errors)
