import csv
import logging
import os
from dataclasses import replace
from typing import Any, Dict, List, Optional, Sequence

from pyqiemi.attacker import ActionType, AttackPlan
from pyqiemi.config import ProfileLibrary
from pyqiemi.eavesdropper import format_report
from pyqiemi.exceptions import ConfigurationError, OutputDirectoryUnwritable, ParameterNotSweepable
from pyqiemi.scenario.scenario_config import ScenarioConfig
from pyqiemi.scenario.scenario_context import ScenarioContext
from pyqiemi.scenario.scenario_report import ScenarioReport, format_value
from pyqiemi.scenario.scenario_router import ScenarioRouter
from pyqiemi.scenario.scenarios import router as builtin_router
from pyqiemi.signal import write_trace

logger = logging.getLogger(__name__)

SWEEPABLE = ("m_i", "f_i", "charger", "jam_depth", "forge_depth")
TRACE_NAMES = ("adapter_voltage", "coil_envelope", "power", "temperature")
SWEEP_FILE = "sweep.csv"


def prepare_outputs(path: str) -> str:
    """
    Raises:
        OutputDirectoryUnwritable: If the directory cannot be created or written to

    """
    try:
        os.makedirs(path, exist_ok=True)
    except OSError:
        raise OutputDirectoryUnwritable(path)
    if not os.access(path, os.W_OK | os.X_OK):
        raise OutputDirectoryUnwritable(path)
    return path


def run_scenario(cfg: ScenarioConfig, library: ProfileLibrary = None, router: ScenarioRouter = None,
                 write: bool = True) -> ScenarioReport:
    """
    Run one scenario and emit its report

    Args:
        cfg (ScenarioConfig): The run configuration
        library (ProfileLibrary): Profiles to resolve names against. Default: the packaged profiles
        router (ScenarioRouter): Registered scenarios. Default: the built-in ones
        write (bool): Whether to write traces, logs and the summary to cfg.outputs

    Returns:
        ScenarioReport: Metrics, assertion outcomes and the files written

    Raises:
        ConfigurationError: If a profile is unknown, the attack plan is invalid or the output directory is not
                            writable. Raised before the simulation starts.

    """
    library = library or ProfileLibrary.load()
    router = router or builtin_router
    cfg.validate(library)
    if write:
        prepare_outputs(cfg.outputs)

    logger.info(f"Running scenario {cfg.name} for {cfg.duration:g} s with seed {cfg.seed}")
    context = router.run(ScenarioContext(cfg, library))
    if context.channel is not None:
        context.traces = {**dict(zip(TRACE_NAMES, context.channel.traces())), **context.traces}
    report = context.report
    report.finish()
    if write:
        _write_outputs(context)
    logger.info(f"Scenario {cfg.name} finished: {report.status.value}")
    return report


def _write_outputs(context: ScenarioContext) -> None:
    outputs, report = context.config.outputs, context.report
    for name, trace in context.traces.items():
        path = os.path.join(outputs, f"{name}.csv")
        write_trace(trace, path)
        report.files[name] = path
    report.files["transitions"] = os.path.join(outputs, "transitions.log")
    context.log.write(report.files["transitions"])
    report.files["messages"] = os.path.join(outputs, "messages.log")
    with open(report.files["messages"], "w") as messages_file:
        messages_file.write(format_report(context.messages))
    report.files["summary"] = os.path.join(outputs, "summary.txt")
    report.files["summary_csv"] = os.path.join(outputs, "summary.csv")
    report.write_summary(report.files["summary"], report.files["summary_csv"])
    logger.info(f"Wrote {len(report.files)} files to {outputs}")


def sweep(cfg: ScenarioConfig, parameter: str, values: Sequence[Any], library: ProfileLibrary = None,
          router: ScenarioRouter = None, write: bool = True) -> List[Dict[str, Any]]:
    """
    Run the scenario once per value of `parameter`

    Args:
        cfg (ScenarioConfig): Base configuration
        parameter (str): One of m_i, f_i, charger, jam_depth, forge_depth
        values (Sequence): Values to run
        library (ProfileLibrary): Profiles. Default: the packaged profiles
        router (ScenarioRouter): Registered scenarios. Default: the built-in ones
        write (bool): Whether to write sweep.csv to cfg.outputs

    Returns:
        List[Dict[str, Any]]: One row per value: the value, the run status and the run metrics

    Raises:
        ParameterNotSweepable: If the parameter is not sweepable or the configuration has nothing it applies to
        ConfigurationError: If a point of the sweep is not a valid configuration

    """
    if parameter not in SWEEPABLE:
        raise ParameterNotSweepable(parameter)
    library = library or ProfileLibrary.load()
    router = router or builtin_router
    points = [sweep_point(cfg, parameter, value) for value in values]
    for point in points:
        point.validate(library)
    if write:
        prepare_outputs(cfg.outputs)

    rows = []
    for value, point in zip(values, points):
        report = run_scenario(point, library, router, write=False)
        rows.append({parameter: value, "status": report.status.value, **report.metrics})
    if write:
        write_sweep(rows, parameter, os.path.join(cfg.outputs, SWEEP_FILE))
    return rows


def sweep_point(cfg: ScenarioConfig, parameter: str, value: Any) -> ScenarioConfig:
    if parameter == "charger":
        return replace(cfg, charger=str(value))
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"Sweep values of {parameter} must be numbers, got {value!r}")
    plan = cfg.attack
    if plan is None:
        raise ParameterNotSweepable(parameter)
    if parameter == "m_i":
        return replace(cfg, attack=_with_injection_depth(plan, value))
    if not plan.has_param(parameter):
        raise ParameterNotSweepable(parameter)
    return replace(cfg, attack=plan.with_param(parameter, value))


def _with_injection_depth(plan: AttackPlan, depth: float) -> AttackPlan:
    """Interference depth on every noise action, voice depth on every voice action."""
    names = {ActionType.Noise: "m_i", ActionType.Voice: "depth"}
    if not any(action.action in names for action in plan.schedule):
        raise ParameterNotSweepable("m_i")
    schedule = tuple(replace(action, params={**action.params, names[action.action]: depth})
                     if action.action in names else action for action in plan.schedule)
    return replace(plan, schedule=schedule)


def write_sweep(rows: List[Dict[str, Any]], parameter: str, path: str) -> None:
    columns = [parameter, "status"]
    for row in rows:
        columns.extend(key for key in row if key not in columns)
    with open(path, "w", newline="") as sweep_file:
        writer = csv.writer(sweep_file, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows([format_value(row.get(column)) for column in columns] for row in rows)


def first_tripped(rows: List[Dict[str, Any]], parameter: str) -> Optional[Any]:
    """First swept value at which the charging-stability proxy tripped."""
    for row in rows:
        if row.get("stability_tripped"):
            return row[parameter]
    return None
