import csv
import os
from enum import Enum
from typing import Any, Dict, List, Optional

from pyqiemi.exceptions import ScenarioAssertionFailed
from pyqiemi.scenario.scenario_config import ScenarioKind


class ScenarioStatus(Enum):
    Running = "Running"
    Passed = "Passed"
    Failed = "Failed"
    Error = "Error"


class ScenarioReport(object):
    def __init__(self, scenario: ScenarioKind, seed: int = 0, status: ScenarioStatus = ScenarioStatus.Running):
        self.scenario = scenario
        self.seed = seed
        self.status = status
        self.metrics: Dict[str, Any] = {}
        self.assertions: Dict[str, bool] = {}
        self.files: Dict[str, str] = {}
        self.error: Optional[str] = None

    def metric(self, name: str, value: Any) -> None:
        self.metrics[name] = value

    def check(self, name: str, passed: bool) -> bool:
        self.assertions[name] = bool(passed)
        return bool(passed)

    @property
    def failed(self) -> List[str]:
        failed = [name for name, passed in self.assertions.items() if not passed]
        if self.error is not None:
            failed.append(f"error: {self.error}")
        return failed

    def set_error_status(self, error: str) -> None:
        self.status = ScenarioStatus.Error
        self.error = error

    def finish(self) -> None:
        if self.status == ScenarioStatus.Running:
            self.status = ScenarioStatus.Failed if self.failed else ScenarioStatus.Passed

    def raise_for_status(self) -> None:
        """
        Raises:
            ScenarioAssertionFailed: If the scenario failed an assertion or stopped with an error

        """
        if self.status in (ScenarioStatus.Failed, ScenarioStatus.Error):
            raise ScenarioAssertionFailed(self.scenario.value, self.failed)

    def summary_rows(self) -> List[List[str]]:
        rows = [["scenario", self.scenario.value], ["status", self.status.value], ["seed", str(self.seed)]]
        rows.extend([name, format_value(value)] for name, value in self.metrics.items())
        rows.extend([f"assert.{name}", "pass" if passed else "fail"] for name, passed in self.assertions.items())
        if self.error is not None:
            rows.append(["error", self.error])
        rows.extend([f"file.{name}", os.path.basename(path)] for name, path in sorted(self.files.items()))
        return rows

    def write_summary(self, text_path: str, csv_path: str) -> None:
        rows = self.summary_rows()
        with open(text_path, "w") as summary_file:
            summary_file.writelines(f"{key}={value}\n" for key, value in rows)
        with open(csv_path, "w", newline="") as summary_file:
            writer = csv.writer(summary_file, lineterminator="\n")
            writer.writerow(["key", "value"])
            writer.writerows(rows)

    def __repr__(self) -> str:
        return str({"scenario": self.scenario.value, "status": self.status.value, "metrics": self.metrics,
                    "assertions": self.assertions})


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)
