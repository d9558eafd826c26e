"""
Tests for RunConfig and the SettingsManager class in managers/settings.py
"""

import json
import os

import pytest

from managers.settings import (FcmSettings, GrpSettings, RunConfig, SettingsManager, VariationSettings,
                               apply_overrides, config_from_dict)
from models.errors import CaseParseError, ConfigError, SchemaVersionError


class TestRunConfig:
    """Tests for RunConfig validation"""

    def test_defaults_valid(self):
        """Default configuration validates"""
        config = RunConfig()
        assert config.validate() is config
        assert config.divisions == config.population_size - 1

    def test_explicit_divisions(self):
        """reference_divisions overrides the population-derived default"""
        assert RunConfig(reference_divisions=7).divisions == 7

    def test_odd_population(self):
        """Population must be even and at least 4"""
        problems = RunConfig(population_size=7).validation_problems()
        assert any(p.startswith('population_size') for p in problems)

    def test_zero_iterations_allowed(self):
        """max_iterations may be zero"""
        assert RunConfig(max_iterations=0).validation_problems() == []

    def test_many_problems(self):
        """Every broken field is listed"""
        config = RunConfig(theta=0.0, algorithm='moead', fcm=FcmSettings(fuzziness=1.0),
                           grp=GrpSettings(weights=(0.0, 0.0)),
                           variation=VariationSettings(p_crossover=1.5))
        problems = config.validation_problems()
        for prefix in ('theta', 'algorithm', 'fcm.fuzziness', 'grp.weights', 'variation.p_crossover'):
            assert any(p.startswith(prefix) for p in problems), prefix
        with pytest.raises(ConfigError):
            config.validate()

    def test_unknown_grp_scope(self):
        """Only the archive and cluster decision matrices are accepted"""
        problems = RunConfig(grp=GrpSettings(scope='global')).validation_problems()
        assert any(p.startswith('grp.scope') for p in problems)
        assert RunConfig(grp=GrpSettings(scope='cluster')).validation_problems() == []

    def test_to_dict_has_schema_version(self):
        """Serialized configs carry their schema version"""
        data = RunConfig(grp=GrpSettings(weights=(0.7, 0.3))).to_dict()
        assert data['schema_version'] == 1
        assert data['grp']['weights'] == [0.7, 0.3]
        assert data['fcm']['n_clusters'] == 2
        assert data['grp']['scope'] == 'archive'


class TestConfigFromDict:
    """Tests for config_from_dict"""

    def test_round_trip(self):
        """to_dict output builds an equal config"""
        config = RunConfig(population_size=20, seed=9, grp=GrpSettings(weights=(0.5, 0.5)))
        assert config_from_dict(config.to_dict()) == config

    def test_partial(self):
        """Missing keys keep their defaults"""
        config = config_from_dict({'seed': 42, 'fcm': {'n_clusters': 3}})
        assert config.seed == 42
        assert config.fcm.n_clusters == 3
        assert config.fcm.fuzziness == 2.0

    def test_unknown_field(self):
        """Unknown keys are named"""
        with pytest.raises(ConfigError, match='fcm.clusters'):
            config_from_dict({'fcm': {'clusters': 3}})

    def test_bad_schema_version(self):
        """A foreign schema version is rejected"""
        with pytest.raises(SchemaVersionError):
            config_from_dict({'schema_version': 99})

    def test_invalid_values(self):
        """Values are validated after building"""
        with pytest.raises(ConfigError):
            config_from_dict({'population_size': 3})


class TestApplyOverrides:
    """Tests for apply_overrides"""

    def test_none_skipped(self):
        """None means not given on the command line"""
        config = RunConfig(seed=4)
        assert apply_overrides(config, seed=None, theta=None) == config

    def test_top_level_and_dotted(self):
        """Top-level and nested names are both accepted"""
        config = apply_overrides(RunConfig(), population_size=10, **{'fcm.n_clusters': 3})
        assert config.population_size == 10
        assert config.fcm.n_clusters == 3

    def test_invalid_override(self):
        """Overrides are validated"""
        with pytest.raises(ConfigError):
            apply_overrides(RunConfig(), population_size=5)

    def test_bad_section(self):
        """A dotted name must reach a nested section"""
        with pytest.raises(ConfigError):
            apply_overrides(RunConfig(), **{'seed.value': 3})


class TestSettingsManager:
    """Tests for SettingsManager"""

    @pytest.fixture
    def settings_file(self, temp_dir):
        """Create a temporary settings file path"""
        return os.path.join(temp_dir, 'run_config.json')

    @pytest.fixture
    def manager(self, settings_file):
        """Create a fresh SettingsManager for each test"""
        return SettingsManager(settings_file)

    def test_initialization(self, manager, settings_file):
        """Test manager starts from the defaults"""
        assert manager.settings_file == settings_file
        assert manager.config == RunConfig()

    def test_load_nonexistent_file(self, manager):
        """A missing config file is a parse error"""
        with pytest.raises(CaseParseError):
            manager.load()

    def test_load_invalid_json(self, manager, settings_file):
        """Broken JSON is a parse error"""
        with open(settings_file, 'w', encoding='utf-8') as f:
            f.write('{ not json')
        with pytest.raises(CaseParseError):
            manager.load()

    def test_save_and_load(self, manager, settings_file):
        """Test saving and loading a configuration"""
        config = RunConfig(population_size=40, max_iterations=25, theta=3.0)
        manager.save(config)
        with open(settings_file, 'r', encoding='utf-8') as f:
            assert json.load(f)['schema_version'] == 1
        assert SettingsManager(settings_file).load() == config

    def test_save_invalid(self, manager, settings_file):
        """Invalid configs are not written"""
        with pytest.raises(ConfigError):
            manager.save(RunConfig(population_size=3))
        assert not os.path.exists(settings_file)

    def test_get_existing_key(self, manager):
        """Test getting plain and dotted keys"""
        manager.save(RunConfig(seed=11))
        assert manager.get('seed') == 11
        assert manager.get('fcm.fuzziness') == 2.0

    def test_get_with_default(self, manager):
        """Test getting a non-existent key returns the default"""
        assert manager.get('nonexistent', 'default') == 'default'
        assert manager.get('fcm.nonexistent') is None
