"""Calibration runner.

Runs the bundled reference scenarios and validates each report against
the calibration rules of its platform.
"""

from typing import Dict, List, Optional

from loguru import logger

from dpathsim.check_registry import CheckRegistry, check_reg
from dpathsim.model_registry import ModelRegistry, model_reg
from dpathsim.models.check_result import CheckResult
from dpathsim.models.simulation_report import SimulationReport
from dpathsim.rules_manager import RulesManager
from dpathsim.scenario_manager import ScenarioManager
from dpathsim.simulator import run_simulation


class CalibrationRunner:
    """Manager for validating reference scenarios against calibration rules."""

    def __init__(
        self,
        scenario_manager: Optional[ScenarioManager] = None,
        rules_manager: Optional[RulesManager] = None,
        models: Optional[ModelRegistry] = None,
        checks: Optional[CheckRegistry] = None,
    ) -> None:
        """Initialize the calibration runner.

        Args:
            scenario_manager: The experiment matrix; the bundled scenarios.yaml if None.
            rules_manager: The calibration rules; the bundled calibration_rules.yaml if None.
            models: Where model_source names resolve; the global model registry if None.
            checks: The checks rule names map to; the global check registry if None.
        """
        self.scenario_manager = scenario_manager if scenario_manager is not None else ScenarioManager()
        self.rules_manager = rules_manager if rules_manager is not None else RulesManager()
        self.models = models if models is not None else model_reg
        self.checks = checks if checks is not None else check_reg
        self.results: List[CheckResult] = []
        self._reports: Dict[str, SimulationReport] = {}

    def get_report(self, scenario_name: str) -> SimulationReport:
        """Run a scenario once and cache its report.

        Args:
            scenario_name: The scenario name.

        Returns:
            SimulationReport: The report.
        """
        if scenario_name not in self._reports:
            config = self.scenario_manager.get_config(scenario_name)
            self._reports[scenario_name] = run_simulation(config, self.models)
        return self._reports[scenario_name]

    def run_all_checks(self, scenarios: Optional[List[str]] = None) -> List[CheckResult]:
        """Run all calibration checks against the bundled scenarios.

        Args:
            scenarios: Filter by scenario names. If None, check all.

        Returns:
            List[CheckResult]: The results of all checks performed.
        """
        self.results = []
        names = self.scenario_manager.get_scenario_names()

        if scenarios:
            names = [name for name in names if name in scenarios]
            logger.debug(f"[CHECK] Filtered to {len(names)} scenario(s) matching: {scenarios}")
            if not names:
                logger.warning(f"No scenarios found matching: {scenarios}")
                return []

        for name in names:
            logger.debug(f"[CHECK] Running all checks for {name}")
            self._execute_checks(name)

        return self.results

    def _execute_checks(self, scenario_name: str) -> None:
        """Execute every configured check for one scenario.

        Args:
            scenario_name: The scenario name.
        """
        report = self.get_report(scenario_name)
        rules = self.rules_manager.get_rules(scenario_name, report.config.platform.value)
        overridden_keys = self.rules_manager.get_overridden_keys(scenario_name)
        model = self.models.resolve(report.config.model_source)

        for rule_name, rule_value in rules.items():
            if rule_value is None:
                continue

            try:
                check = self.checks.get_check(rule_name)
            except KeyError:
                logger.debug(f"[CHECK] Check '{rule_name}' not in registry, skipping")
                continue

            baseline = None
            if rule_name == "stage_variance_baseline":
                baseline = self.models.resolve(self.get_report(str(rule_value)).config.model_source)

            result = check.execute(report=report, target=scenario_name, rule_value=rule_value, model=model, baseline=baseline)
            result.is_override = rule_name in overridden_keys
            self.results.append(result)

            override_marker = " (OVERRIDE)" if result.is_override else ""
            logger.debug(f"[CHECK] {rule_name} for {scenario_name}: {result.passed}{override_marker}")

    def get_summary(self) -> Dict[str, Dict[str, int]]:
        """Get a summary of check results.

        Returns:
            Dict: A summary with passed/failed/total counts per scenario.
        """
        summary: Dict[str, Dict[str, int]] = {}

        for result in self.results:
            counts = summary.setdefault(result.target, {"passed": 0, "failed": 0, "total": 0})
            counts["total"] += 1
            if result.passed:
                counts["passed"] += 1
            else:
                counts["failed"] += 1

        return summary

    @property
    def all_passed(self) -> bool:
        """Whether every check of the last run passed."""
        return all(result.passed for result in self.results)


def validate_reference_scenarios(names: Optional[List[str]] = None) -> List[CheckResult]:
    """Run the bundled scenarios and check them against the calibration rules.

    Args:
        names: Scenario names to check; all bundled scenarios if None.

    Returns:
        List[CheckResult]: One result per applied rule and scenario.
    """
    return CalibrationRunner().run_all_checks(names)
