"""Scenario configuration loader.

Reads a scenario from a flat ``key=value`` file or a YAML mapping,
resolves ``${VAR}`` references from the environment, applies the
DPATHSIM_SEED override and validates the result.
"""

import os
from pathlib import Path
from typing import Dict, Mapping, Optional, Union

import yaml
from loguru import logger
from pydantic import ValidationError

from dpathsim.exceptions import ConfigError
from dpathsim.models.scenario_config import ScenarioConfig

SEED_ENV_VAR = "DPATHSIM_SEED"
YAML_SUFFIXES = (".yaml", ".yml")
CONFIG_SUFFIXES = (".conf", ".cfg", ".txt", ".ini") + YAML_SUFFIXES

RawConfig = Dict[str, Union[str, int, float, bool, list, None]]


def parse_key_value(text: str) -> RawConfig:
    """Parse flat ``key=value`` text.

    Args:
        text: The file content.

    Returns:
        RawConfig: The raw values, as strings.

    Raises:
        ConfigError: On a line without ``=`` or a repeated key.
    """
    values: RawConfig = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"line {line_number}: expected key=value, found '{line}'")
        if key in values:
            raise ConfigError(f"line {line_number}: duplicate key", key=key)
        values[key] = value.strip()
    return values


def _resolve_env(values: RawConfig, env: Mapping[str, str]) -> RawConfig:
    resolved: RawConfig = {}
    for key, value in values.items():
        if isinstance(value, str) and value.startswith("${") and value.endswith("}"):
            env_var = value[2:-1]
            if env_var not in env:
                raise ConfigError(f"environment variable {env_var} is not set", key=key)
            value = env[env_var]
        resolved[key] = value
    return resolved


def build_config(values: RawConfig, env: Optional[Mapping[str, str]] = None, seed: Optional[int] = None, name: Optional[str] = None) -> ScenarioConfig:
    """Validate raw values into a ScenarioConfig.

    Seed precedence: ``seed`` argument, then DPATHSIM_SEED, then the file.

    Args:
        values: The raw key/value pairs.
        env: Environment used for ``${VAR}`` and DPATHSIM_SEED; os.environ if None.
        seed: An explicit seed override.
        name: A default scenario name when the values carry none.

    Returns:
        ScenarioConfig: The validated configuration.

    Raises:
        ConfigError: Naming the offending key.
    """
    env = os.environ if env is None else env
    values = _resolve_env(values, env)

    if seed is not None:
        values["seed"] = seed
    elif env.get(SEED_ENV_VAR):
        logger.debug(f"[CONFIG] Seed overridden by {SEED_ENV_VAR}")
        values["seed"] = env[SEED_ENV_VAR]
    if name and "name" not in values:
        values["name"] = name

    try:
        return ScenarioConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or None
        if error["type"] == "extra_forbidden":
            raise ConfigError("unknown key", key=key) from None
        raise ConfigError(error["msg"], key=key) from None


def load_scenario_config(path: Union[str, Path], env: Optional[Mapping[str, str]] = None, seed: Optional[int] = None) -> ScenarioConfig:
    """Load a scenario file.

    Args:
        path: A ``key=value`` file, or a ``.yaml``/``.yml`` mapping.
        env: Environment for ``${VAR}`` and DPATHSIM_SEED; os.environ if None.
        seed: An explicit seed override (takes precedence over everything).

    Returns:
        ScenarioConfig: The validated configuration; its name defaults to the file stem.

    Raises:
        ConfigError: If the file is missing, unreadable or invalid.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Scenario config file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"Cannot read scenario config {path}: {e}") from e

    if path.suffix.lower() in YAML_SUFFIXES:
        try:
            values = yaml.safe_load(text) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {path}: {e}") from e
        if not isinstance(values, dict):
            raise ConfigError(f"Scenario config {path} must be a mapping")
        values = {str(key): value for key, value in values.items()}
    else:
        values = parse_key_value(text)

    logger.debug(f"[CONFIG] Loaded {len(values)} key(s) from {path}")
    return build_config(values, env=env, seed=seed, name=path.stem)
