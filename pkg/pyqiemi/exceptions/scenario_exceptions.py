from typing import List

from pyqiemi.exceptions.config_exceptions import ConfigurationError
from pyqiemi.exceptions.pyqiemi_exceptions import PyQiEmiException


class ScenarioNotFound(ConfigurationError):
    def __init__(self, scenario_name: str):
        super().__init__(f"No scenario named {scenario_name}")
        self.scenario_name = scenario_name


class DuplicateScenarioName(PyQiEmiException):
    def __init__(self, scenario_name: str):
        super().__init__(f"Scenario {scenario_name} is already registered")
        self.scenario_name = scenario_name


class ScenarioAssertionFailed(PyQiEmiException):
    def __init__(self, scenario: str, failed: List[str]):
        super().__init__(f"Scenario {scenario} failed assertions: {', '.join(failed)}")
        self.scenario = scenario
        self.failed = failed
