"""
Run configuration for the dispatch engine.
Handles loading/saving RunConfig as JSON and merging command-line overrides.
"""

from dataclasses import asdict, dataclass, field, fields, is_dataclass, replace
import json
import logging
import math
import os

from constants import (ALGORITHMS, CONFIG_SCHEMA_VERSION, DEFAULT_AXIS_THETA, DEFAULT_ITERATIONS,
                       DEFAULT_POPULATION, DEFAULT_SEED, DEFAULT_THETA, FCM_CLUSTERS, FCM_EPSILON,
                       FCM_FUZZINESS, FCM_MAX_ITER, GRP_RESOLUTION, GRP_SCOPES, PENALTY_WEIGHT,
                       PM_ETA, POWER_REPAIR_TOL_MW, REPAIR_MAX_ITER, SBX_ETA, SBX_PROBABILITY)
from models.errors import CaseParseError, ConfigError, SchemaVersionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VariationSettings:
    """SBX crossover and polynomial mutation parameters.

    p_mutation None means 1 / n_variables.
    """

    eta_crossover: float = SBX_ETA
    p_crossover: float = SBX_PROBABILITY
    eta_mutation: float = PM_ETA
    p_mutation: float | None = None


@dataclass(frozen=True)
class RepairSettings:
    max_iter: int = REPAIR_MAX_ITER
    tolerance_mw: float = POWER_REPAIR_TOL_MW


@dataclass(frozen=True)
class FcmSettings:
    n_clusters: int = FCM_CLUSTERS
    fuzziness: float = FCM_FUZZINESS
    epsilon: float = FCM_EPSILON
    max_iter: int = FCM_MAX_ITER


@dataclass(frozen=True)
class GrpSettings:
    """Grey relation projection: per-objective weights (None = equal) and resolution.

    scope 'archive' standardizes and builds the ideal schemes over the whole
    archive and then picks the best member of each cluster; 'cluster' repeats
    the whole ranking inside every cluster.
    """

    weights: tuple | None = None
    resolution: float = GRP_RESOLUTION
    scope: str = GRP_SCOPES[0]


@dataclass(frozen=True)
class RunConfig:
    """Everything an optimizer run and its decision stage depend on.

    reference_divisions None means population_size - 1 (one direction per member).
    """

    population_size: int = DEFAULT_POPULATION
    max_iterations: int = DEFAULT_ITERATIONS
    seed: int = DEFAULT_SEED
    theta: float = DEFAULT_THETA
    axis_theta: float = DEFAULT_AXIS_THETA
    reference_divisions: int | None = None
    algorithm: str = 'theta-dea'
    penalty_weight: float = PENALTY_WEIGHT
    variation: VariationSettings = field(default_factory=VariationSettings)
    repair: RepairSettings = field(default_factory=RepairSettings)
    fcm: FcmSettings = field(default_factory=FcmSettings)
    grp: GrpSettings = field(default_factory=GrpSettings)

    @property
    def divisions(self):
        if self.reference_divisions is None:
            return self.population_size - 1
        return self.reference_divisions

    def validation_problems(self):
        problems = []
        if not isinstance(self.population_size, int) or self.population_size < 4 or self.population_size % 2:
            problems.append(f"population_size: must be an even integer >= 4, got {self.population_size!r}")
        if not isinstance(self.max_iterations, int) or self.max_iterations < 0:
            problems.append(f"max_iterations: must be an integer >= 0, got {self.max_iterations!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            problems.append(f"seed: must be an unsigned integer, got {self.seed!r}")
        if not _positive(self.theta):
            problems.append(f"theta: must be > 0, got {self.theta!r}")
        if not _positive(self.axis_theta):
            problems.append(f"axis_theta: must be > 0, got {self.axis_theta!r}")
        if self.reference_divisions is not None and (
                not isinstance(self.reference_divisions, int) or self.reference_divisions < 1):
            problems.append(f"reference_divisions: must be an integer >= 1, got {self.reference_divisions!r}")
        if self.algorithm not in ALGORITHMS:
            problems.append(f"algorithm: must be one of {', '.join(ALGORITHMS)}, got {self.algorithm!r}")
        if not _positive(self.penalty_weight):
            problems.append(f"penalty_weight: must be > 0, got {self.penalty_weight!r}")

        v = self.variation
        for name in ('eta_crossover', 'eta_mutation'):
            value = getattr(v, name)
            if not _number(value) or value < 0:
                problems.append(f"variation.{name}: must be >= 0, got {value!r}")
        if not _probability(v.p_crossover):
            problems.append(f"variation.p_crossover: must lie in [0, 1], got {v.p_crossover!r}")
        if v.p_mutation is not None and not _probability(v.p_mutation):
            problems.append(f"variation.p_mutation: must lie in [0, 1] or be null, got {v.p_mutation!r}")

        if not isinstance(self.repair.max_iter, int) or self.repair.max_iter < 1:
            problems.append(f"repair.max_iter: must be an integer >= 1, got {self.repair.max_iter!r}")
        if not _positive(self.repair.tolerance_mw):
            problems.append(f"repair.tolerance_mw: must be > 0, got {self.repair.tolerance_mw!r}")

        f = self.fcm
        if not isinstance(f.n_clusters, int) or f.n_clusters < 1:
            problems.append(f"fcm.n_clusters: must be an integer >= 1, got {f.n_clusters!r}")
        if not _number(f.fuzziness) or f.fuzziness <= 1:
            problems.append(f"fcm.fuzziness: must be > 1, got {f.fuzziness!r}")
        if not _positive(f.epsilon):
            problems.append(f"fcm.epsilon: must be > 0, got {f.epsilon!r}")
        if not isinstance(f.max_iter, int) or f.max_iter < 1:
            problems.append(f"fcm.max_iter: must be an integer >= 1, got {f.max_iter!r}")

        g = self.grp
        if g.weights is not None:
            if len(g.weights) != 2 or not all(_number(w) for w in g.weights):
                problems.append(f"grp.weights: expected two numbers, got {g.weights!r}")
            elif any(w < 0 for w in g.weights) or not any(w > 0 for w in g.weights):
                problems.append(f"grp.weights: must be nonnegative and not all zero, got {g.weights!r}")
        if not _number(g.resolution) or not 0 < g.resolution <= 1:
            problems.append(f"grp.resolution: must lie in (0, 1], got {g.resolution!r}")
        if g.scope not in GRP_SCOPES:
            problems.append(f"grp.scope: must be one of {', '.join(GRP_SCOPES)}, got {g.scope!r}")
        return problems

    def validate(self):
        """Raise ConfigError listing every problem, or return self."""
        problems = self.validation_problems()
        if problems:
            raise ConfigError("invalid run configuration:\n" + "\n".join(problems))
        return self

    def to_dict(self):
        data = asdict(self)
        if data['grp']['weights'] is not None:
            data['grp']['weights'] = list(data['grp']['weights'])
        data['schema_version'] = CONFIG_SCHEMA_VERSION
        return data


def _number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _positive(value):
    return _number(value) and value > 0


def _probability(value):
    return _number(value) and 0 <= value <= 1


NESTED = {
    'variation': VariationSettings,
    'repair': RepairSettings,
    'fcm': FcmSettings,
    'grp': GrpSettings,
}


def _build(cls, data, path):
    if not isinstance(data, dict):
        raise ConfigError(f"{path or 'config'}: expected an object")
    known = {f.name for f in fields(cls)}
    unknown = [f"{path}{key}" for key in data if key not in known]
    if unknown:
        raise ConfigError("unknown config field(s): " + ", ".join(unknown))
    kwargs = {}
    for key, value in data.items():
        if key in NESTED and cls is RunConfig:
            kwargs[key] = _build(NESTED[key], value, f"{key}.")
        elif key == 'weights' and value is not None:
            kwargs[key] = tuple(value) if isinstance(value, list) else value
        else:
            kwargs[key] = value
    return cls(**kwargs)


def config_from_dict(data):
    """Build and validate a RunConfig from parsed JSON.

    Raises:
        SchemaVersionError: schema_version present and unsupported
        ConfigError: unknown fields or broken invariants
    """
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    data = dict(data)
    version = data.pop('schema_version', CONFIG_SCHEMA_VERSION)
    if version != CONFIG_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"config schema_version {version!r} is not supported (expected {CONFIG_SCHEMA_VERSION})")
    return _build(RunConfig, data, '').validate()


def apply_overrides(config, **overrides):
    """Return a copy of config with every non-None override applied, then validated.

    Dotted names ("fcm.n_clusters") reach nested settings.
    """
    top = {}
    nested = {}
    for key, value in overrides.items():
        if value is None:
            continue
        section, _, name = key.partition('.')
        if name:
            nested.setdefault(section, {})[name] = value
        else:
            top[key] = value
    for section, values in nested.items():
        current = getattr(config, section, None)
        if not is_dataclass(current):
            raise ConfigError(f"{section}: not a config section")
        top[section] = replace(current, **values)
    return replace(config, **top).validate()


class SettingsManager:
    """Manages RunConfig persistence."""

    def __init__(self, settings_file):
        self.settings_file = settings_file
        self._config = RunConfig()

    @property
    def config(self):
        return self._config

    def load(self):
        """Load the run configuration from file.

        Returns:
            RunConfig

        Raises:
            CaseParseError: missing file or invalid JSON
            ConfigError / SchemaVersionError: see config_from_dict
        """
        if not os.path.exists(self.settings_file):
            raise CaseParseError(f"Config file not found: {self.settings_file}")
        try:
            with open(self.settings_file, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise CaseParseError(
                f"{self.settings_file}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
        self._config = config_from_dict(data)
        logger.info("Loaded run configuration from %s", self.settings_file)
        return self._config

    def save(self, config):
        """Save a run configuration to file.

        Args:
            config: RunConfig
        """
        config.validate()
        with open(self.settings_file, 'w', encoding='utf-8') as f:
            json.dump(config.to_dict(), f, indent=2)
            f.write('\n')
        self._config = config

    def get(self, key, default=None):
        """Get a setting value by (optionally dotted) name.

        Args:
            key: e.g. "population_size" or "fcm.fuzziness"
            default: returned when the name does not exist

        Returns:
            The setting value or default
        """
        value = self._config
        for part in key.split('.'):
            if not hasattr(value, part):
                return default
            value = getattr(value, part)
        return value
