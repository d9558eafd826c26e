"""
Tests for the command-line entry point (app.py).
Covers exit codes, artifacts and the precedence of run settings.
"""

import json
import os

import pandas as pd
import pytest

from app import describe_case, effective_config, build_parser, main
from conftest import make_small_case
from constants import (EXIT_INFEASIBLE_CASE, EXIT_INFEASIBLE_RESULT, EXIT_OK, EXIT_PARSE_ERROR,
                       EXIT_VALIDATION_ERROR)
from managers.case_files import save_case
from managers.reports import ExperimentManifest

SQUARE_NOTE = {'chp_units[0].for_vertices_mw_mwth': 'synthetic rectangle'}


@pytest.fixture
def small_case_path(temp_dir):
    path = os.path.join(temp_dir, 'small.json')
    save_case(make_small_case(), path, provenance=SQUARE_NOTE)
    return path


@pytest.fixture
def dynamic_case_path(temp_dir):
    path = os.path.join(temp_dir, 'dynamic.json')
    case = make_small_case(p_demand=(120.0, 150.0), h_demand=(30.0, 40.0))
    save_case(case, path, provenance=SQUARE_NOTE)
    return path


@pytest.fixture
def case1_data(case1_path):
    with open(case1_path, 'r', encoding='utf-8') as f:
        return json.load(f)


def _write_json(directory, name, data):
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f)
    return path


class TestValidateCommand:
    """Tests for the validate command"""

    def test_shipped_case(self, capsys):
        """A shipped case validates with demand feasible"""
        assert main(['validate', 'case1']) == EXIT_OK
        out = capsys.readouterr().out
        assert "Case 'case1'" in out
        assert 'demand feasible' in out

    def test_missing_file(self, temp_dir, capsys):
        """A missing case file is a parse error"""
        assert main(['validate', os.path.join(temp_dir, 'absent.json')]) == EXIT_PARSE_ERROR
        assert 'Parse error' in capsys.readouterr().err

    def test_invalid_case(self, temp_dir, case1_data, capsys):
        """Schema problems are listed and exit with the validation code"""
        case1_data['power_units'][0]['colour'] = 'red'
        path = _write_json(temp_dir, 'bad.json', case1_data)
        assert main(['validate', path]) == EXIT_VALIDATION_ERROR
        assert 'power_units[0].colour: unknown field' in capsys.readouterr().err

    def test_infeasible_demand(self, temp_dir, case1_data, capsys):
        """Demand beyond capacity is reported as an infeasible case"""
        case1_data['demand']['p_demand_mw'] = 5000
        path = _write_json(temp_dir, 'huge.json', case1_data)
        assert main(['validate', path]) == EXIT_INFEASIBLE_CASE
        assert 'INFEASIBLE' in capsys.readouterr().out

    def test_describe_lists_chp_units(self, case1):
        """Diagnostics mention every CHP unit"""
        lines, feasible = describe_case(case1)
        assert feasible
        assert sum(line.strip().startswith('CHP unit') for line in lines) == 3


class TestSettingsPrecedence:
    """Tests for effective_config"""

    def test_flags_override_file(self, temp_dir, small_case_path):
        """Command-line flags beat the config file"""
        config_path = _write_json(temp_dir, 'run.json', {'population_size': 20, 'seed': 9})
        args = build_parser().parse_args(['solve', small_case_path, '--config', config_path, '--seed', '4'])
        config = effective_config(args)
        assert config.population_size == 20
        assert config.seed == 4

    def test_bad_flag_value(self, small_case_path, output_env, capsys):
        """An odd population is a configuration error"""
        assert main(['solve', small_case_path, '--pop', '5']) == EXIT_VALIDATION_ERROR
        assert 'population_size' in capsys.readouterr().err

    def test_solve_infeasible_case(self, temp_dir, output_env):
        """solve refuses a case whose demand exceeds capacity"""
        path = os.path.join(temp_dir, 'over.json')
        save_case(make_small_case(p_demand=(500.0,)), path, provenance=SQUARE_NOTE)
        assert main(['solve', path, '--pop', '8', '--iters', '1']) == EXIT_INFEASIBLE_CASE


class TestSolveCommand:
    """Tests for the solve command"""

    def test_static_artifacts(self, small_case_path, temp_dir, capsys):
        """A short run writes the archive, report, plot data and manifest"""
        out = os.path.join(temp_dir, 'run')
        code = main(['solve', small_case_path, '--pop', '8', '--iters', '2', '--seed', '3', '--out', out])
        assert code == EXIT_OK
        for name in ('archive.csv', 'bcs_report.txt', 'front.csv', 'manifest.json'):
            assert os.path.exists(os.path.join(out, name))
        manifest = ExperimentManifest.load(os.path.join(out, 'manifest.json'))
        assert manifest.command == 'solve'
        assert manifest.config['population_size'] == 8
        assert manifest.all_feasible
        assert 'Min cost' in capsys.readouterr().out

    @pytest.mark.parametrize('case_name', ['small', 'case2'])
    def test_same_seed_same_bytes(self, case_name, small_case_path, temp_dir):
        """Two runs with one seed write byte-identical archive and BCS report files"""
        case = small_case_path if case_name == 'small' else 'case2'
        outs = [os.path.join(temp_dir, f'run{k}') for k in range(2)]
        for out in outs:
            assert main(['solve', case, '--pop', '12', '--iters', '3', '--seed', '17', '--out', out]) in (
                EXIT_OK, EXIT_INFEASIBLE_RESULT)
        for name in ('archive.csv', 'bcs_report.txt', 'front.csv'):
            with open(os.path.join(outs[0], name), 'rb') as first:
                expected = first.read()
            with open(os.path.join(outs[1], name), 'rb') as second:
                assert second.read() == expected, name

    def test_output_env(self, small_case_path, output_env):
        """Without --out the environment variable decides"""
        assert main(['solve', small_case_path, '--pop', '8', '--iters', '1']) == EXIT_OK
        assert os.path.exists(os.path.join(output_env, 'archive.csv'))

    def test_dynamic_schedule_files(self, dynamic_case_path, temp_dir, capsys):
        """A multi-interval case writes one schedule per BCS and the interval data"""
        out = os.path.join(temp_dir, 'dyn')
        code = main(['solve', dynamic_case_path, '--pop', '8', '--iters', '2', '--out', out])
        assert code in (0, 6)
        assert os.path.exists(os.path.join(out, 'schedule_bcs1.csv'))
        intervals = pd.read_csv(os.path.join(out, 'intervals.csv'))
        assert set(intervals['interval']) == {0, 1}
        assert 'schedule: total cost' in capsys.readouterr().out


class TestCompareCommand:
    """Tests for the compare command"""

    def test_single_run(self, small_case_path, temp_dir):
        """One paired run per algorithm produces the metric files"""
        out = os.path.join(temp_dir, 'cmp')
        code = main(['compare', small_case_path, '--runs', '1', '--pop', '8', '--iters', '1', '--out', out])
        assert code == EXIT_OK
        summary = pd.read_csv(os.path.join(out, 'metrics.csv'))
        assert set(summary['algorithm']) == {'theta-dea', 'nsga-ii'}
        assert os.path.exists(os.path.join(out, 'manifest.json'))

    def test_zero_runs(self, small_case_path, output_env):
        """At least one run is required"""
        assert main(['compare', small_case_path, '--runs', '0']) == EXIT_VALIDATION_ERROR
