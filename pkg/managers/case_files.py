"""
Case file management - loading/saving dispatch cases as schema-versioned JSON.

Field names carry their units (p_min_mw, cost_b_usd_per_mw, ...). Every problem
found while reading a file is collected and reported with its field path.
"""

from dataclasses import dataclass, field
import json
import logging
import math
import os

from constants import CASE_SCHEMA_VERSION
from models.dispatch_case import DispatchCase
from models.errors import CaseParseError, CaseValidationError, SchemaVersionError
from models.units import ChpUnit, HeatOnlyUnit, LossModel, PowerOnlyUnit

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')

# json key -> (dataclass attribute, required)
POWER_FIELDS = {
    'name': ('name', False),
    'p_min_mw': ('p_min', True),
    'p_max_mw': ('p_max', True),
    'cost_a_usd': ('cost_a', True),
    'cost_b_usd_per_mw': ('cost_b', True),
    'cost_d_usd_per_mw2': ('cost_d', True),
    'cost_cubic_usd_per_mw3': ('cost_cubic', False),
    'vple_e_usd': ('vple_e', False),
    'vple_zeta_per_mw': ('vple_zeta', False),
    'em_mu_kg': ('em_mu', True),
    'em_kappa_kg_per_mw': ('em_kappa', True),
    'em_pi_kg_per_mw2': ('em_pi', True),
    'em_sigma_kg': ('em_sigma', False),
    'em_nu_per_mw': ('em_nu', False),
    'co2_kg_per_mw': ('co2', False),
    'ramp_up_mw': ('ramp_up', False),
    'ramp_down_mw': ('ramp_down', False),
}

CHP_FIELDS = {
    'name': ('name', False),
    'cost_alpha_usd': ('cost_alpha', True),
    'cost_beta_usd_per_mw': ('cost_beta', True),
    'cost_gamma_usd_per_mw2': ('cost_gamma', True),
    'cost_delta_usd_per_mwth': ('cost_delta', True),
    'cost_epsilon_usd_per_mwth2': ('cost_epsilon', True),
    'cost_xi_usd_per_mw_mwth': ('cost_xi', True),
    'em_tau_kg_per_mw': ('em_tau', True),
    'co2_kg_per_mw': ('co2', False),
    'for_vertices_mw_mwth': ('for_polygon', True),
}

HEAT_FIELDS = {
    'name': ('name', False),
    'h_min_mwth': ('h_min', True),
    'h_max_mwth': ('h_max', True),
    'cost_phi_usd': ('cost_phi', True),
    'cost_eta_usd_per_mwth': ('cost_eta', True),
    'cost_lambda_usd_per_mwth2': ('cost_lambda', True),
    'em_rho_kg_per_mwth': ('em_rho', True),
    'co2_kg_per_mwth': ('co2', False),
}

LOSS_FIELDS = {
    'b_matrix_per_mw': ('b_matrix', True),
    'b_linear': ('b_linear', True),
    'b_const_mw': ('b_const', True),
}

DEMAND_FIELDS = ('p_demand_mw', 'h_demand_mwth', 'provenance')
TOP_LEVEL_FIELDS = ('schema_version', 'name', 'description', 'demand',
                    'power_units', 'chp_units', 'heat_units', 'loss')


@dataclass
class CaseFile:
    """A loaded case file.

    Attributes:
        schema_version: file schema version
        case: validated DispatchCase
        provenance: notes keyed by block path, e.g. "chp_units[0].for_vertices_mw_mwth"
        description: free text
    """

    schema_version: int
    case: DispatchCase
    provenance: dict = field(default_factory=dict)
    description: str = ''


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


class _Reader:
    """Collects problems while turning parsed JSON into case objects."""

    def __init__(self):
        self.problems = []
        self.provenance = {}

    def number(self, value, path):
        if not _is_number(value):
            self.problems.append(f"{path}: expected a number, got {type(value).__name__}")
            return math.nan
        return float(value)

    def number_list(self, value, path):
        if not isinstance(value, list):
            self.problems.append(f"{path}: expected a list of numbers")
            return ()
        return tuple(self.number(v, f"{path}[{i}]") for i, v in enumerate(value))

    def profile(self, value, path):
        if _is_number(value):
            return (float(value),)
        return self.number_list(value, path)

    def string(self, value, path):
        if not isinstance(value, str):
            self.problems.append(f"{path}: expected a string")
            return ''
        return value

    def block(self, data, path, fields, extra=('provenance',)):
        """Map a JSON object onto dataclass keyword arguments."""
        if not isinstance(data, dict):
            self.problems.append(f"{path}: expected an object")
            return None
        for key in data:
            if key not in fields and key not in extra:
                self.problems.append(f"{path}.{key}: unknown field")
        kwargs = {}
        for key, (attr, required) in fields.items():
            if key not in data or data[key] is None:
                if required:
                    self.problems.append(f"{path}.{key}: missing required field")
                continue
            value = data[key]
            if key == 'name':
                kwargs[attr] = self.string(value, f"{path}.{key}")
            elif key == 'for_vertices_mw_mwth':
                kwargs[attr] = self.vertices(value, f"{path}.{key}")
            elif key == 'b_matrix_per_mw':
                kwargs[attr] = self.matrix(value, f"{path}.{key}")
            elif key == 'b_linear':
                kwargs[attr] = self.number_list(value, f"{path}.{key}")
            else:
                kwargs[attr] = self.number(value, f"{path}.{key}")
        if 'provenance' in data:
            self.provenance[path] = self.string(data['provenance'], f"{path}.provenance")
        return kwargs

    def vertices(self, value, path):
        if not isinstance(value, list):
            self.problems.append(f"{path}: expected a list of [power, heat] pairs")
            return ()
        pairs = []
        for i, pair in enumerate(value):
            if not isinstance(pair, list) or len(pair) != 2:
                self.problems.append(f"{path}[{i}]: expected a [power, heat] pair")
                continue
            pairs.append((self.number(pair[0], f"{path}[{i}][0]"), self.number(pair[1], f"{path}[{i}][1]")))
        return tuple(pairs)

    def matrix(self, value, path):
        if not isinstance(value, list):
            self.problems.append(f"{path}: expected a list of rows")
            return ()
        return tuple(self.number_list(row, f"{path}[{i}]") for i, row in enumerate(value))

    def units(self, data, key, fields, factory):
        if data is None:
            return ()
        if not isinstance(data, list):
            self.problems.append(f"{key}: expected a list")
            return ()
        units = []
        for i, entry in enumerate(data):
            path = f"{key}[{i}]"
            extra = ('provenance', 'for_provenance') if factory is ChpUnit else ('provenance',)
            kwargs = self.block(entry, path, fields, extra)
            if kwargs is None:
                continue
            if factory is ChpUnit:
                note = entry.get('for_provenance')
                if not isinstance(note, str) or not note.strip():
                    self.problems.append(f"{path}.for_provenance: provenance note for the FOR vertices is required")
                else:
                    self.provenance[f"{path}.for_vertices_mw_mwth"] = note
            try:
                units.append(factory(**kwargs))
            except TypeError:
                # missing required values were already reported
                pass
        return tuple(units)


def _read_json(path):
    if not os.path.exists(path):
        raise CaseParseError(f"File not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise CaseParseError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise CaseParseError(f"{path}: cannot read file: {e}") from e


def resolve_case_path(path_or_name):
    """Map a shipped case name ("case1") to its data file; other values pass through."""
    if os.path.exists(path_or_name):
        return path_or_name
    shipped = os.path.join(DATA_DIR, f"{path_or_name}.json")
    if os.path.exists(shipped):
        return shipped
    return path_or_name


def parse_case_data(data, source='<data>'):
    """Build a CaseFile from parsed JSON, reporting every problem at once.

    Raises:
        CaseParseError: top level is not an object
        SchemaVersionError: unsupported schema_version
        CaseValidationError: unknown/missing/mistyped fields or broken invariants
    """
    if not isinstance(data, dict):
        raise CaseParseError(f"{source}: top level must be a JSON object")
    version = data.get('schema_version')
    if version != CASE_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{source}: schema_version {version!r} is not supported (expected {CASE_SCHEMA_VERSION})")

    reader = _Reader()
    for key in data:
        if key not in TOP_LEVEL_FIELDS:
            reader.problems.append(f"{key}: unknown field")

    name = reader.string(data.get('name', ''), 'name')
    description = reader.string(data.get('description', ''), 'description')

    demand = data.get('demand')
    p_demand, h_demand = (), ()
    if not isinstance(demand, dict):
        reader.problems.append("demand: expected an object with p_demand_mw and h_demand_mwth")
    else:
        for key in demand:
            if key not in DEMAND_FIELDS:
                reader.problems.append(f"demand.{key}: unknown field")
        if 'p_demand_mw' not in demand:
            reader.problems.append("demand.p_demand_mw: missing required field")
        else:
            p_demand = reader.profile(demand['p_demand_mw'], 'demand.p_demand_mw')
        if 'h_demand_mwth' not in demand:
            reader.problems.append("demand.h_demand_mwth: missing required field")
        else:
            h_demand = reader.profile(demand['h_demand_mwth'], 'demand.h_demand_mwth')
        if 'provenance' in demand:
            reader.provenance['demand'] = reader.string(demand['provenance'], 'demand.provenance')

    power_units = reader.units(data.get('power_units', []), 'power_units', POWER_FIELDS, PowerOnlyUnit)
    chp_units = reader.units(data.get('chp_units', []), 'chp_units', CHP_FIELDS, ChpUnit)
    heat_units = reader.units(data.get('heat_units', []), 'heat_units', HEAT_FIELDS, HeatOnlyUnit)

    loss = LossModel.absent()
    if data.get('loss') is not None:
        kwargs = reader.block(data['loss'], 'loss', LOSS_FIELDS)
        if kwargs is not None and len(kwargs) == len(LOSS_FIELDS):
            loss = LossModel(**kwargs)

    if reader.problems:
        raise CaseValidationError(reader.problems)

    case = DispatchCase(
        power_units=power_units,
        chp_units=chp_units,
        heat_units=heat_units,
        p_demand=p_demand,
        h_demand=h_demand,
        loss=loss,
        name=name,
    )
    case.validate()
    return CaseFile(schema_version=version, case=case, provenance=reader.provenance,
                    description=description)


def load_case_file(path):
    """Load and validate a case file.

    Returns:
        CaseFile
    """
    path = resolve_case_path(path)
    case_file = parse_case_data(_read_json(path), source=path)
    logger.info("Loaded case %r from %s (N_p=%d N_c=%d N_h=%d N_T=%d)", case_file.case.name, path,
                case_file.case.n_p, case_file.case.n_c, case_file.case.n_h, case_file.case.n_intervals)
    return case_file


def load_case(path):
    """Load a fully validated DispatchCase from a case file."""
    return load_case_file(path).case


def _unit_dict(unit, fields, skip_defaults):
    out = {}
    for key, (attr, required) in fields.items():
        value = getattr(unit, attr)
        if value is None or (not required and key in skip_defaults and value == skip_defaults[key]):
            continue
        if key == 'for_vertices_mw_mwth':
            value = [[p, h] for p, h in value]
        out[key] = value
    return out


def case_to_data(case_file):
    """Inverse of parse_case_data."""
    case = case_file.case
    notes = case_file.provenance

    def profile(values):
        return values[0] if len(values) == 1 else list(values)

    def with_note(entry, path):
        if path in notes:
            entry['provenance'] = notes[path]
        return entry

    power = [with_note(_unit_dict(u, POWER_FIELDS, {'name': ''}), f"power_units[{i}]")
             for i, u in enumerate(case.power_units)]
    chp = []
    for j, u in enumerate(case.chp_units):
        entry = with_note(_unit_dict(u, CHP_FIELDS, {'name': ''}), f"chp_units[{j}]")
        entry['for_provenance'] = notes.get(f"chp_units[{j}].for_vertices_mw_mwth", '')
        chp.append(entry)
    heat = [with_note(_unit_dict(u, HEAT_FIELDS, {'name': ''}), f"heat_units[{k}]")
            for k, u in enumerate(case.heat_units)]

    demand = with_note({'p_demand_mw': profile(case.p_demand), 'h_demand_mwth': profile(case.h_demand)},
                       'demand')
    loss = None
    if case.loss.present:
        loss = with_note({
            'b_matrix_per_mw': [list(row) for row in case.loss.b_matrix],
            'b_linear': list(case.loss.b_linear),
            'b_const_mw': case.loss.b_const,
        }, 'loss')

    return {
        'schema_version': case_file.schema_version,
        'name': case.name,
        'description': case_file.description,
        'demand': demand,
        'power_units': power,
        'chp_units': chp,
        'heat_units': heat,
        'loss': loss,
    }


def save_case_file(case_file, path):
    """Write a case file as indented JSON with full float precision."""
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(case_to_data(case_file), f, indent=2)
        f.write('\n')
    logger.info("Saved case %r to %s", case_file.case.name, path)


def save_case(case, path, provenance=None, description=''):
    """Write a bare DispatchCase (provenance notes optional)."""
    save_case_file(CaseFile(CASE_SCHEMA_VERSION, case, dict(provenance or {}), description), path)
