import pytest

from app.config import (
    BUDGET_ENV_VAR,
    DEFAULT_CONFIG,
    HARD_CAP,
    Budget,
    load_config,
    parse_budget_override,
)
from app.errors import BudgetExceededError

MINIMAL_CONFIG = """
general:
  log_level: DEBUG
  timezone: Europe/Berlin
budget:
  transitive: 6
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.yml"
    path.write_text(MINIMAL_CONFIG)
    return path


class TestLoadConfig:
    def test_defaults_without_file(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert load_config() == DEFAULT_CONFIG

    def test_merges_over_defaults(self, config_file):
        config = load_config(str(config_file))
        assert config["general"]["timezone"] == "Europe/Berlin"
        assert config["budget"]["transitive"] == 6
        assert config["budget"]["mixed_cut"] == DEFAULT_CONFIG["budget"]["mixed_cut"]
        assert config["corpus"]["default_seed"] == 42

    def test_missing_explicit_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config(str(tmp_path / "missing.yml"))

    def test_missing_required_section(self, tmp_path):
        path = tmp_path / "config.yml"
        path.write_text("general:\n  log_level: INFO\n")
        with pytest.raises(ValueError, match="budget"):
            load_config(str(path))

    def test_root_must_be_mapping(self, tmp_path):
        path = tmp_path / "config.yml"
        path.write_text("- a\n- b\n")
        with pytest.raises(ValueError):
            load_config(str(path))

    def test_example_config_loads(self):
        config = load_config("config/config.example.yml")
        assert config["gallery"]["enabled"]["G5-three-elem"] is True
        budget = Budget.from_config(config, environ={})
        assert set(budget.caps) == set(DEFAULT_CONFIG["budget"])


class TestBudgetOverride:
    def test_single_integer(self):
        assert parse_budget_override("12") == {"*": 12}

    def test_pairs(self):
        assert parse_budget_override("transitive=12, mixed-cut=9") == {"transitive": 12, "mixed_cut": 9}

    def test_blank(self):
        assert parse_budget_override("  ") == {}

    def test_malformed(self):
        with pytest.raises(ValueError):
            parse_budget_override("transitive")
        with pytest.raises(ValueError):
            parse_budget_override("transitive=x")

    @pytest.mark.parametrize("value", ["transitve=12", "hard_cap=16", "transitive=12,storage=4"])
    def test_unknown_key(self, value):
        with pytest.raises(ValueError, match="Unknown budget cap"):
            parse_budget_override(value)


class TestBudget:
    def test_from_config(self, config_file):
        budget = Budget.from_config(load_config(str(config_file)), environ={})
        assert budget.cap("transitive") == 6
        assert budget.cap("mixed_cut") == 8

    def test_env_override_everything(self):
        budget = Budget.from_config(DEFAULT_CONFIG, environ={BUDGET_ENV_VAR: "12"})
        assert budget.cap("transitive") == 12
        assert budget.cap("bival") == 12

    def test_env_never_exceeds_hard_cap(self):
        budget = Budget.from_config(DEFAULT_CONFIG, environ={BUDGET_ENV_VAR: "transitive=40"})
        assert budget.cap("transitive") == HARD_CAP

    def test_unknown_config_key(self):
        config = {"budget": {"hard_cap": 16}}
        with pytest.raises(ValueError, match="hard_cap"):
            Budget.from_config(config, environ={})

    def test_env_read_from_process(self, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV_VAR, "mixed_cut=3")
        assert Budget.default().cap("mixed_cut") == 3

    def test_require(self):
        budget = Budget.from_config(DEFAULT_CONFIG, environ={})
        budget.require("mixed_cut", 8)
        with pytest.raises(BudgetExceededError) as excinfo:
            budget.require("mixed_cut", 9)
        assert excinfo.value.check == "mixed_cut"
        assert excinfo.value.cap == 8
