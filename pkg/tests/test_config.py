"""Tests for configuration loading and command-line overrides."""

import json

import pytest
from pydantic import ValidationError

from lrckit.config import Budgets, LrcKitConfig, load_config, merge_overrides
from lrckit.exceptions import CodeFileError, ParameterError


class TestBudgets:
    def test_defaults(self):
        budgets = Budgets()
        assert budgets.distance_subsets == 2**24
        assert budgets.erasure_patterns == 2**16
        assert budgets.kcore_exhaustive_max_n == 14

    def test_unknown_budget_rejected(self):
        with pytest.raises(ValidationError):
            Budgets(no_such_budget=3)

    def test_positive(self):
        with pytest.raises(ValidationError):
            Budgets(span_vectors=0)

    def test_frozen(self):
        with pytest.raises(ValidationError):
            Budgets().sampling_retries = 5


class TestLoadConfig:
    """Test reading the JSON configuration file."""

    def test_none_gives_defaults(self):
        assert load_config(None) == LrcKitConfig()

    def test_partial_file(self, tmp_path):
        path = tmp_path / "lrckit.json"
        path.write_text(json.dumps({"seed": 4, "budgets": {"repair_subsets": 50}}))
        config = load_config(path)
        assert config.seed == 4
        assert config.threads == 1
        assert config.budgets.repair_subsets == 50
        assert config.budgets.span_vectors == Budgets().span_vectors

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParameterError, match="absent.json"):
            load_config(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "lrckit.json"
        path.write_text("{seed: 4")
        with pytest.raises(ParameterError, match="Cannot read configuration"):
            load_config(path)

    def test_reported_as_configuration_error(self, tmp_path):
        path = tmp_path / "lrckit.json"
        path.write_text("[1, 2")
        with pytest.raises(ParameterError) as info:
            load_config(path)
        assert not isinstance(info.value, CodeFileError)
        assert str(path) in str(info.value)

    def test_invalid_values(self, tmp_path):
        path = tmp_path / "lrckit.json"
        path.write_text(json.dumps({"threads": 0}))
        with pytest.raises(ParameterError, match="Invalid configuration"):
            load_config(str(path))


class TestMergeOverrides:
    def test_none_values_ignored(self):
        config = LrcKitConfig(seed=3)
        assert merge_overrides(config, {"seed": None, "threads": None}) is config

    def test_override(self):
        config = merge_overrides(LrcKitConfig(seed=3), {"seed": 8, "threads": 4})
        assert (config.seed, config.threads) == (8, 4)

    def test_keeps_budgets(self):
        config = LrcKitConfig(budgets=Budgets(span_vectors=9))
        assert merge_overrides(config, {"seed": 1}).budgets.span_vectors == 9

    def test_invalid_override(self):
        with pytest.raises(ParameterError):
            merge_overrides(LrcKitConfig(), {"threads": -2})
