"""Configuration loader and evaluation budget for the logical structures explorer"""

import copy
import os
import yaml
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional

from app.errors import BudgetExceededError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/config.yml"

BUDGET_ENV_VAR = "LSX_BUDGET"

# Storage cap; LSX_BUDGET never raises a check above it
HARD_CAP = 16

DEFAULT_CONFIG: Dict[str, Any] = {
    "general": {
        "log_level": "INFO",
        "timezone": "UTC",
    },
    "budget": {
        "transitive": 10,
        "mixed_cut": 8,
        "strongly_closed": 16,
        "characterization": 8,
        "bival": 10,
    },
    "corpus": {
        "workers": 1,
        "minimize": True,
        "default_seed": 42,
    },
    "gallery": {
        "enabled": {},
        "lambda0": "evens",
        "g2_finite_value": "lambda0",
        "window": 6,
        "sample_size": 6,
    },
    "bival": {
        "minimality_samples": 16,
        "minimality_seed": 0,
    },
}

REQUIRED_SECTIONS = ["general", "budget"]


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from a YAML file, merged over the built-in defaults

    Args:
        config_path: Path to config.yml; None uses config/config.yml when present

    Returns:
        Dictionary containing configuration

    Raises:
        FileNotFoundError: If an explicitly given config file doesn't exist
        ValueError: If config is invalid
    """
    if config_path is None:
        if not os.path.exists(DEFAULT_CONFIG_PATH):
            logger.debug("No configuration file found, using built-in defaults")
            return copy.deepcopy(DEFAULT_CONFIG)
        config_path = DEFAULT_CONFIG_PATH

    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, "r") as f:
        loaded = yaml.safe_load(f) or {}

    if not isinstance(loaded, dict):
        raise ValueError(f"Configuration root must be a mapping: {config_path}")

    # Validate required sections
    for section in REQUIRED_SECTIONS:
        if section not in loaded:
            raise ValueError(f"Missing required configuration section: {section}")

    config = _merge(DEFAULT_CONFIG, loaded)
    logger.info(f"Loaded configuration from {config_path}")
    return config


def _require_known_cap(key: str, source: str) -> None:
    if key not in DEFAULT_CONFIG["budget"]:
        known = ", ".join(DEFAULT_CONFIG["budget"])
        raise ValueError(f"Unknown budget cap '{key}' in {source} (expected one of {known})")


def parse_budget_override(value: str) -> Dict[str, int]:
    """
    Parse the LSX_BUDGET override

    Args:
        value: Either one integer for every soft cap, or "key=value" pairs separated by commas

    Returns:
        Mapping of soft-cap names to caps; the key "*" means every cap

    Raises:
        ValueError: If the value is malformed or names an unknown cap
    """
    value = value.strip()
    if not value:
        return {}
    if value.isdigit():
        return {"*": int(value)}
    caps = {}
    for item in value.split(","):
        key, sep, number = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not number.strip().isdigit() or not key:
            raise ValueError(f"Malformed {BUDGET_ENV_VAR} entry '{item}'")
        _require_known_cap(key, BUDGET_ENV_VAR)
        caps[key] = int(number)
    return caps


@dataclass(frozen=True)
class Budget:
    """Soft carrier caps per check, bounded by HARD_CAP"""

    caps: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CONFIG["budget"]))

    @classmethod
    def from_config(cls, config: Mapping[str, Any], environ: Optional[Mapping[str, str]] = None) -> "Budget":
        caps = dict(DEFAULT_CONFIG["budget"])
        configured = config.get("budget") or {}
        for key in configured:
            _require_known_cap(key, "configuration")
        caps.update(configured)
        environ = os.environ if environ is None else environ
        override = parse_budget_override(environ.get(BUDGET_ENV_VAR, ""))
        if "*" in override:
            caps = {key: override["*"] for key in caps}
        for key, cap in override.items():
            if key != "*":
                caps[key] = cap
        return cls({key: min(int(cap), HARD_CAP) for key, cap in caps.items()})

    @classmethod
    def default(cls) -> "Budget":
        return cls.from_config(DEFAULT_CONFIG)

    def cap(self, check: str) -> int:
        return self.caps.get(check, HARD_CAP)

    def require(self, check: str, n: int) -> None:
        """
        Raise BudgetExceededError when n is above the cap for a check

        Args:
            check: Soft-cap name (e.g. 'transitive')
            n: Carrier size
        """
        cap = self.cap(check)
        if n > cap:
            raise BudgetExceededError(check, n, cap)


def resolve_budget(budget: Optional[Budget]) -> Budget:
    return budget if budget is not None else Budget.default()
