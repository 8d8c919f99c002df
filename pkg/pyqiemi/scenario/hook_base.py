"""
Hooks around a scenario run. A hook gets the ScenarioContext and returns the context the run goes on
with, or None to keep the one it was given. A hook that raises is logged and counted in the report's
`hook_errors` metric, and the run continues with the context it had.
"""
import functools
import logging
from typing import TYPE_CHECKING, Callable, List, Optional, Tuple

from pyqiemi.scenario.scenario_config import ScenarioKind
from pyqiemi.scenario.scenario_report import ScenarioReport

if TYPE_CHECKING:
    from pyqiemi.scenario.scenario_context import ScenarioContext

logger = logging.getLogger(__name__)

ScenarioHook = Callable[["ScenarioContext"], Optional["ScenarioContext"]]
ReportHook = Callable[[ScenarioReport], None]

HOOK_ERRORS = "hook_errors"


def report_hook(fn: ReportHook) -> ScenarioHook:
    """
    Turn a function of the report into a hook, for metrics and checks added to every run. As an after
    hook its checks count towards the final status.
    """

    @functools.wraps(fn)
    def hook(context: "ScenarioContext") -> None:
        fn(context.report)

    return hook


def only_for(*kinds: ScenarioKind) -> Callable[[ScenarioHook], ScenarioHook]:
    """
    Decorator restricting a hook to some scenario kinds. Other scenarios skip it.

    Raises:
        ValueError: If a kind is not a known scenario

    """
    selected = frozenset(ScenarioKind(kind) for kind in kinds)

    def decorator(fn: ScenarioHook) -> ScenarioHook:
        @functools.wraps(fn)
        def hook(context: "ScenarioContext") -> Optional["ScenarioContext"]:
            if context.config.scenario in selected:
                return fn(context)
            return None

        return hook

    return decorator


class HookBase(object):
    def __init__(self, before: List[ScenarioHook] = None, after: List[ScenarioHook] = None):
        self._before: List[ScenarioHook] = list(before or [])
        self._after: List[ScenarioHook] = list(after or [])

    def before(self, *hooks: ScenarioHook) -> None:
        self._before.extend(hooks)

    def after(self, *hooks: ScenarioHook) -> None:
        self._after.extend(hooks)

    def nested_in(self, outer: "HookBase") -> Tuple[List[ScenarioHook], List[ScenarioHook]]:
        """Before and after hooks when `outer` wraps this object: outer's before first, outer's after last."""
        return outer._before + self._before, self._after + outer._after

    @staticmethod
    def run_hooks(hooks: List[ScenarioHook], context: "ScenarioContext") -> "ScenarioContext":
        for hook in hooks:
            try:
                result = hook(context)
            except Exception as e:
                logger.warning(f"Failed to run hook {getattr(hook, '__name__', hook)}. Error: {e}")
                report = context.report
                report.metric(HOOK_ERRORS, report.metrics.get(HOOK_ERRORS, 0) + 1)
                continue
            if result is not None:
                context = result
        return context
