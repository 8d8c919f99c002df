from pyqiemi.scenario.hook_base import HookBase, ReportHook, ScenarioHook, only_for, report_hook
from pyqiemi.scenario.runner import SWEEPABLE, first_tripped, prepare_outputs, run_scenario, sweep, sweep_point
from pyqiemi.scenario.scenario_config import ScenarioConfig, ScenarioKind
from pyqiemi.scenario.scenario_context import ScenarioContext
from pyqiemi.scenario.scenario_report import ScenarioReport, ScenarioStatus
from pyqiemi.scenario.scenario_router import Scenario, ScenarioRouter, default_exception_handler
from pyqiemi.scenario.scenarios import router
