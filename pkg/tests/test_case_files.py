"""
Tests for case file loading and saving in managers/case_files.py
"""

import copy
import json
import os

import pytest

from conftest import make_small_case
from managers.case_files import (DATA_DIR, case_to_data, load_case, load_case_file, parse_case_data,
                                 resolve_case_path, save_case, save_case_file)
from models.errors import CaseParseError, CaseValidationError, SchemaVersionError


@pytest.fixture
def case2_data(case2_path):
    with open(case2_path, 'r', encoding='utf-8') as f:
        return json.load(f)


def _errors(data):
    with pytest.raises(CaseValidationError) as exc_info:
        parse_case_data(data)
    return exc_info.value.errors


class TestLoadShippedCases:
    """Tests for the cases shipped in data/"""

    def test_resolve_shipped_name(self):
        """A bare case name maps to the data directory"""
        assert resolve_case_path('case1') == os.path.join(DATA_DIR, 'case1.json')

    def test_resolve_passthrough(self, temp_dir):
        """Unknown names are returned unchanged"""
        missing = os.path.join(temp_dir, 'nope.json')
        assert resolve_case_path(missing) == missing

    def test_load_by_name(self):
        """load_case accepts a shipped case name"""
        case = load_case('case1')
        assert (case.n_p, case.n_c, case.n_h) == (1, 3, 1)

    def test_provenance_kept(self, case2_file):
        """FOR provenance is stored under the vertex path"""
        assert 'chp_units[0].for_vertices_mw_mwth' in case2_file.provenance
        assert 'chp_units[1].for_vertices_mw_mwth' in case2_file.provenance
        assert case2_file.schema_version == 1

    def test_loss_matrix_symmetric(self, case2):
        """Case 2 loss matrix is square over the six electrical units"""
        assert case2.loss.dimension == 6
        assert case2.loss.validation_problems('loss', case2.n_electric) == []


class TestParseErrors:
    """Tests for problems reported while reading a case"""

    def test_missing_file(self, temp_dir):
        """A missing file is a parse error"""
        with pytest.raises(CaseParseError):
            load_case_file(os.path.join(temp_dir, 'missing.json'))

    def test_invalid_json(self, temp_dir):
        """Broken JSON is a parse error naming the position"""
        path = os.path.join(temp_dir, 'broken.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write('{"schema_version": 1,')
        with pytest.raises(CaseParseError, match='invalid JSON'):
            load_case_file(path)

    def test_top_level_not_object(self):
        """The top level must be an object"""
        with pytest.raises(CaseParseError):
            parse_case_data([1, 2, 3])

    def test_schema_version(self, case2_data):
        """An unknown schema version is rejected"""
        case2_data['schema_version'] = 2
        with pytest.raises(SchemaVersionError):
            parse_case_data(case2_data)

    def test_unknown_field_path(self, case2_data):
        """An unknown unit field is reported with its path"""
        case2_data['power_units'][2]['colour'] = 'red'
        assert 'power_units[2].colour: unknown field' in _errors(case2_data)

    def test_missing_required_field(self, case2_data):
        """A missing coefficient is reported"""
        del case2_data['heat_units'][0]['cost_phi_usd']
        assert 'heat_units[0].cost_phi_usd: missing required field' in _errors(case2_data)

    def test_wrong_type(self, case2_data):
        """Strings are not numbers"""
        case2_data['power_units'][0]['p_min_mw'] = 'ten'
        assert 'power_units[0].p_min_mw: expected a number, got str' in _errors(case2_data)

    def test_asymmetric_b_cell(self, case2_data):
        """The offending B-matrix cell is named"""
        case2_data['loss']['b_matrix_per_mw'][0][1] += 1e-3
        errors = _errors(case2_data)
        assert any(e.startswith('loss.b_matrix_per_mw[0][1]') and 'symmetric' in e for e in errors)

    def test_nonfinite_b_linear(self, case2_data):
        """A NaN linear loss coefficient is rejected and named"""
        case2_data['loss']['b_linear'][0] = float('nan')
        assert 'loss.b_linear[0]: must be finite' in _errors(case2_data)

    def test_nonfinite_b_linear_from_file(self, case2_data, temp_dir):
        """The same check holds when the NaN comes through a JSON file"""
        case2_data['loss']['b_linear'][0] = float('nan')
        path = os.path.join(temp_dir, 'nan.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(case2_data, f)
        with pytest.raises(CaseValidationError) as exc_info:
            load_case_file(path)
        assert 'loss.b_linear[0]: must be finite' in exc_info.value.errors

    def test_for_provenance_required(self, case2_data):
        """CHP entries must say where their FOR vertices came from"""
        del case2_data['chp_units'][1]['for_provenance']
        assert any(e.startswith('chp_units[1].for_provenance') for e in _errors(case2_data))

    def test_nonconvex_for(self, case2_data):
        """A reflex FOR vertex is rejected on load"""
        case2_data['chp_units'][0]['for_vertices_mw_mwth'] = [[0, 0], [10, 0], [5, 2], [10, 10], [0, 10]]
        assert any(e.startswith('chp_units[0].for_vertices_mw_mwth') for e in _errors(case2_data))

    def test_all_problems_at_once(self, case2_data):
        """Several independent problems arrive in one error"""
        case2_data['power_units'][0]['colour'] = 'red'
        case2_data['heat_units'][0]['h_max_mwth'] = 'lots'
        case2_data['extra'] = True
        errors = _errors(case2_data)
        assert len(errors) >= 3
        assert 'extra: unknown field' in errors


def _numeric_leaves(node, path=()):
    if isinstance(node, dict):
        for key, value in node.items():
            yield from _numeric_leaves(value, path + (key,))
    elif isinstance(node, list):
        for i, value in enumerate(node):
            yield from _numeric_leaves(value, path + (i,))
    elif isinstance(node, (int, float)) and not isinstance(node, bool) and path != ('schema_version',):
        yield path


with open(os.path.join(DATA_DIR, 'case2.json'), 'r', encoding='utf-8') as _f:
    CASE2_LEAVES = list(_numeric_leaves(json.load(_f)))


class TestSingleFieldMutation:
    """Every numeric field of a valid case is guarded on load"""

    @pytest.mark.parametrize('leaf', CASE2_LEAVES, ids=lambda leaf: '.'.join(map(str, leaf)))
    @pytest.mark.parametrize('bad', [float('nan'), float('inf'), '1.0'], ids=['nan', 'inf', 'text'])
    def test_bad_value_rejected(self, case2_data, leaf, bad):
        """Replacing one number with a bad value fails validation, naming the owning block"""
        node = case2_data
        for key in leaf[:-1]:
            node = node[key]
        node[leaf[-1]] = bad
        owner = leaf[0] if leaf[0] in ('loss', 'demand') else f"{leaf[0]}[{leaf[1]}]"
        errors = _errors(case2_data)
        assert errors
        assert any(e.startswith(owner) for e in errors), errors

    def test_leaves_found(self):
        """The walk reaches units, vertices and loss terms"""
        assert ('loss', 'b_linear', 0) in CASE2_LEAVES
        assert ('demand', 'p_demand_mw') in CASE2_LEAVES
        assert any(leaf[:3] == ('chp_units', 0, 'for_vertices_mw_mwth') for leaf in CASE2_LEAVES)


class TestSaveCase:
    """Tests for writing cases back to disk"""

    def test_round_trip_shipped(self, case2_file, temp_dir):
        """Saving and reloading gives an equal case and the same notes"""
        path = os.path.join(temp_dir, 'case2_copy.json')
        save_case_file(case2_file, path)
        reloaded = load_case_file(path)
        assert reloaded.case == case2_file.case
        assert reloaded.provenance == case2_file.provenance

    def test_dynamic_profile_saved_as_list(self, temp_dir):
        """Multi-interval demand is written as a list"""
        case = make_small_case(p_demand=(120.0, 150.0), h_demand=(30.0, 40.0))
        notes = {'chp_units[0].for_vertices_mw_mwth': 'synthetic square'}
        path = os.path.join(temp_dir, 'dynamic.json')
        save_case(case, path, provenance=notes)
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
        assert data['demand']['p_demand_mw'] == [120.0, 150.0]
        assert load_case(path) == case

    def test_static_profile_saved_as_scalar(self, case2_file):
        """A single interval is written as a scalar"""
        data = case_to_data(case2_file)
        assert data['demand']['p_demand_mw'] == 600
        assert data['loss']['b_const_mw'] == case2_file.case.loss.b_const

    def test_to_data_does_not_share_state(self, case2_file):
        """Mutating the produced dict leaves the case alone"""
        data = copy.deepcopy(case_to_data(case2_file))
        data['chp_units'][0]['for_vertices_mw_mwth'][0][0] = -1
        assert case2_file.case.chp_units[0].for_polygon[0][0] >= 0
