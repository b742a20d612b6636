"""Scenario manager module."""

from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml

from dpathsim.config_loader import build_config
from dpathsim.models.scenario_config import ScenarioConfig


class ScenarioManager:
    """Manager for the bundled experiment matrix in scenarios.yaml."""

    def __init__(self, yaml_path: Optional[str] = None) -> None:
        """Initialize the scenario manager.

        Args:
             yaml_path: The path to a scenarios.yaml file. If None, uses the bundled one.
        """
        if yaml_path is None:
            yaml_path = Path(__file__).parent / "scenarios.yaml"
        else:
            yaml_path = Path(yaml_path)

        self.yaml_path = yaml_path
        self._data = self._load_yaml()

    def _load_yaml(self) -> Dict[str, Dict[str, Union[str, int, float, bool, list]]]:
        """Load and parse the scenarios YAML file.

        Returns:
            A dictionary with 'defaults' and 'matrix' keys.
        """
        if not self.yaml_path.exists():
            raise FileNotFoundError(f"Scenarios file not found: {self.yaml_path}")

        try:
            with open(self.yaml_path, "r") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML in {self.yaml_path}: {e}") from e

        if not data or "scenarios" not in data:
            raise ValueError(f"Invalid scenarios file: missing 'scenarios' key in {self.yaml_path}")

        scenarios = data["scenarios"]
        if "matrix" not in scenarios or not scenarios["matrix"]:
            raise ValueError(f"Invalid scenarios file: missing 'matrix' section in {self.yaml_path}")

        return {
            "defaults": scenarios.get("defaults") or {},
            "matrix": scenarios["matrix"],
        }

    def get_scenario_names(self) -> List[str]:
        """Get the names of all scenarios, in file order.

        Returns:
            List[str]: The scenario names.
        """
        return list(self._data["matrix"])

    def get_values(self, scenario_name: str) -> Dict[str, Union[str, int, float, bool, list]]:
        """Get the raw values of a scenario: defaults overlaid with its own keys.

        The model_source defaults to the scenario name.

        Args:
            scenario_name: The scenario name.

        Returns:
            The merged values.

        Raises:
            KeyError: If the scenario is not defined.
        """
        if scenario_name not in self._data["matrix"]:
            raise KeyError(f"Scenario '{scenario_name}' not found in {self.yaml_path}")

        values = dict(self._data["defaults"])
        values.update(self._data["matrix"][scenario_name] or {})
        values.setdefault("model_source", scenario_name)
        values["name"] = scenario_name
        return values

    def get_config(self, scenario_name: str, seed: Optional[int] = None) -> ScenarioConfig:
        """Get a validated scenario configuration.

        Args:
            scenario_name: The scenario name.
            seed: An explicit seed override.

        Returns:
            ScenarioConfig: The configuration.
        """
        return build_config(self.get_values(scenario_name), env={}, seed=seed)

    def get_all_configs(self) -> Dict[str, ScenarioConfig]:
        """Get every scenario configuration.

        Returns:
            Dict[str, ScenarioConfig]: Configuration per scenario name.
        """
        return {name: self.get_config(name) for name in self.get_scenario_names()}
