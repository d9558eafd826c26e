"""
Pytest configuration and fixtures for dispatch engine tests.
"""

import os
import shutil
import sys
import tempfile
from pathlib import Path

import pytest

# Add parent directory to path so we can import the modules
sys.path.insert(0, str(Path(__file__).parent.parent))

from managers.case_files import load_case, load_case_file
from managers.settings import RunConfig, VariationSettings
from models.dispatch_case import DispatchCase
from models.dispatch_solution import DispatchSolution, DispatchVars, FeasibilityReport
from models.units import ChpUnit, HeatOnlyUnit, LossModel, PowerOnlyUnit

DATA_DIR = Path(__file__).parent.parent / 'data'


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run long stochastic acceptance tests')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long stochastic run, needs --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files"""
    temp_path = tempfile.mkdtemp()
    yield temp_path
    # Cleanup after test
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture(scope='session')
def case1_path():
    return str(DATA_DIR / 'case1.json')


@pytest.fixture(scope='session')
def case2_path():
    return str(DATA_DIR / 'case2.json')


@pytest.fixture(scope='session')
def case1(case1_path):
    """Shipped five-unit case (no loss)"""
    return load_case(case1_path)


@pytest.fixture(scope='session')
def case2(case2_path):
    """Shipped seven-unit case (valve points and B-loss)"""
    return load_case(case2_path)


@pytest.fixture(scope='session')
def case2_file(case2_path):
    return load_case_file(case2_path)


SQUARE_FOR = ((10.0, 0.0), (60.0, 0.0), (60.0, 40.0), (10.0, 40.0))


def make_small_case(p_demand=(120.0,), h_demand=(30.0,), ramp=True, loss=False):
    """Two power-only units, one CHP unit with a rectangular FOR, one boiler."""
    power = (
        PowerOnlyUnit(p_min=10, p_max=80, cost_a=20, cost_b=2.0, cost_d=0.01,
                      em_mu=0.001, em_kappa=0.0, em_pi=0.0004,
                      ramp_up=30.0 if ramp else None, ramp_down=30.0 if ramp else None, name='g1'),
        PowerOnlyUnit(p_min=20, p_max=100, cost_a=10, cost_b=1.5, cost_d=0.02,
                      em_mu=0.002, em_kappa=-0.0001, em_pi=0.0002,
                      ramp_up=40.0 if ramp else None, ramp_down=40.0 if ramp else None, name='g2'),
    )
    chp = (ChpUnit(cost_alpha=100, cost_beta=10, cost_gamma=0.02, cost_delta=1.0, cost_epsilon=0.01,
                   cost_xi=0.005, em_tau=0.001, for_polygon=SQUARE_FOR, name='c3'),)
    heat = (HeatOnlyUnit(h_min=0, h_max=50, cost_phi=50, cost_eta=2.0, cost_lambda=0.03, em_rho=0.002,
                         name='b4'),)
    loss_model = LossModel.absent()
    if loss:
        loss_model = LossModel(
            b_matrix=((2e-5, 1e-6, 2e-6), (1e-6, 3e-5, 1e-6), (2e-6, 1e-6, 2e-5)),
            b_linear=(1e-4, -2e-4, 5e-5),
            b_const=0.01,
        )
    return DispatchCase(power, chp, heat, tuple(p_demand), tuple(h_demand), loss_model, 'small')


def make_solution(cost, emission, residual=0.0, penalty=0.0, dispatch=None):
    """Hand-built solution shaped like make_small_case, for archive and decision tests."""
    if dispatch is None:
        dispatch = DispatchVars(p=[50.0, 40.0], op=[30.0], hp=[10.0], th=[20.0])
    return DispatchSolution(vars=dispatch, cost=float(cost), emission=float(emission), loss=0.0,
                            report=FeasibilityReport(power_residual=residual), penalty=penalty)


@pytest.fixture
def small_case():
    """Static synthetic case without loss"""
    return make_small_case()


@pytest.fixture
def small_loss_case():
    return make_small_case(loss=True)


@pytest.fixture
def dynamic_case():
    """Three-interval synthetic case with ramp limits"""
    return make_small_case(p_demand=(120.0, 150.0, 130.0), h_demand=(30.0, 40.0, 35.0))


@pytest.fixture
def small_config():
    """Short run settings for fast tests"""
    return RunConfig(population_size=12, max_iterations=4, seed=3)


@pytest.fixture
def frozen_config():
    """Variation switched off entirely"""
    return RunConfig(population_size=8, max_iterations=2, seed=5,
                     variation=VariationSettings(p_crossover=0.0, p_mutation=0.0))


@pytest.fixture
def output_env(temp_dir, monkeypatch):
    """Point the default output directory at a temp dir"""
    out = os.path.join(temp_dir, 'out')
    monkeypatch.setenv('CHPEED_OUTPUT_DIR', out)
    return out
