"""Calibration rules manager module."""

from pathlib import Path
from typing import Dict, Optional, Union

import yaml

RuleValue = Union[str, int, float, bool, None]


class RulesManager:
    """Manager for loading and accessing calibration rules from YAML."""

    def __init__(self, yaml_path: Optional[str] = None) -> None:
        """Initialize the rules manager.

        Args:
             yaml_path: The path to the calibration_rules.yaml file. If None, uses the default location.
        """
        if yaml_path is None:
            yaml_path = Path(__file__).parent / "calibration_rules.yaml"
        else:
            yaml_path = Path(yaml_path)

        self.yaml_path = yaml_path
        self._data = self._load_yaml()

    def _load_yaml(self) -> Dict[str, Dict]:
        """Load and parse the calibration rules YAML file.

        Returns:
            A dictionary with 'defaults', 'platforms' and 'overrides' keys.
        """
        if not self.yaml_path.exists():
            raise FileNotFoundError(f"Calibration rules file not found: {self.yaml_path}")

        try:
            with open(self.yaml_path, "r") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML in {self.yaml_path}: {e}") from e

        if not data or "calibration_rules" not in data:
            raise ValueError(f"Invalid calibration rules file: missing 'calibration_rules' key in {self.yaml_path}")

        rules = data["calibration_rules"]
        if "defaults" not in rules:
            raise ValueError(f"Invalid calibration rules: missing 'defaults' section in {self.yaml_path}")

        return {
            "defaults": rules.get("defaults") or {},
            "platforms": rules.get("platforms") or {},
            "overrides": rules.get("overrides") or {},
        }

    def get_rules(self, scenario_name: str, platform: str) -> Dict[str, RuleValue]:
        """Get calibration rules for a scenario.

        Defaults, then the platform's rules, then scenario-specific overrides.

        Args:
            scenario_name: The scenario name.
            platform: The scenario's platform ("VOI" or "BOI").

        Returns:
            A dictionary of rules for the scenario.
        """
        rules = dict(self._data["defaults"])
        rules.update(self._data["platforms"].get(platform) or {})
        rules.update(self._data["overrides"].get(scenario_name) or {})
        return rules

    def get_overridden_keys(self, scenario_name: str) -> set:
        """Get the set of rule keys that are overridden for a specific scenario.

        Args:
            scenario_name: The scenario name.

        Returns:
            A set of rule keys that have scenario-specific overrides.
        """
        return set(self._data["overrides"].get(scenario_name) or {})
