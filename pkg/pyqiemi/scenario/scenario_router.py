import logging
from typing import Callable, List, Tuple

from pyqiemi.exceptions import DuplicateScenarioName, ScenarioNotFound
from pyqiemi.scenario.hook_base import HookBase, ScenarioHook
from pyqiemi.scenario.scenario_config import ScenarioKind
from pyqiemi.scenario.scenario_context import ScenarioContext

logger = logging.getLogger(__name__)

ScenarioHandler = Callable[[ScenarioContext], None]
ExceptionHandler = Callable[[Exception, ScenarioContext], None]


def default_exception_handler(e: Exception, context: ScenarioContext) -> None:
    logger.warning(f"Scenario {context.config.name} - failed run {context}. Error: {e}.")
    context.report.set_error_status(f"{type(e).__name__}: {e}")


class Scenario(HookBase):
    def __init__(self, kind: ScenarioKind, handler: ScenarioHandler, exception_handler: ExceptionHandler,
                 before: List[ScenarioHook] = None, after: List[ScenarioHook] = None):
        super().__init__(before=before, after=after)
        self.kind = kind
        self.handler = handler
        self.exception_handler = exception_handler

    def __repr__(self) -> str:
        return str({"kind": self.kind.value, "handler": self.handler.__name__, "before": len(self._before),
                    "after": len(self._after)})


class ScenarioRouter(HookBase):
    def __init__(self, before: List[ScenarioHook] = None, after: List[ScenarioHook] = None):
        """
        Args:
            before (List[ScenarioHook]): Hooks run before each scenario
            after (List[ScenarioHook]): Hooks run after each scenario
        """
        super().__init__(before, after)
        self.scenarios: List[Scenario] = []

    def scenario(self, kind: ScenarioKind, exception_handler: ExceptionHandler = default_exception_handler,
                 before: List[ScenarioHook] = None, after: List[ScenarioHook] = None):
        """
        Decorator to register a scenario

        Args:
            kind (ScenarioKind): The scenario the decorated function runs
            exception_handler (ExceptionHandler): Called when the scenario raises. Default: logs a warning and
                                                  marks the report as errored
            before (List[ScenarioHook]): Hooks run before this scenario, after the router's own
            after (List[ScenarioHook]): Hooks run after this scenario, before the router's own

        Raises:
            DuplicateScenarioName: If the router already has a scenario of this kind

        """
        self._is_scenario_duplicate(kind)

        def wrapper(fn: ScenarioHandler):
            self.scenarios.append(Scenario(kind, fn, exception_handler, before=list(before or []),
                                           after=list(after or [])))
            return fn

        return wrapper

    def include_router(self, *routers: "ScenarioRouter") -> None:
        for router in routers:
            for scenario in router.scenarios:
                self._is_scenario_duplicate(scenario.kind)
                before, after = scenario.nested_in(router)
                self.scenarios.append(Scenario(scenario.kind, scenario.handler, scenario.exception_handler,
                                               before=before, after=after))

    def run(self, context: ScenarioContext) -> ScenarioContext:
        """
        Run the configured scenario between its before and after hooks

        Raises:
            ScenarioNotFound: If no scenario of the configured kind is registered

        """
        scenario = self.get_scenario(context.config.scenario)
        before, after = scenario.nested_in(self)
        context = self.run_hooks(before, context)
        try:
            logger.debug(f"Running scenario {scenario}")
            scenario.handler(context)
        except Exception as e:
            logger.debug(f"Failed scenario: {context}. Error: {e}.")
            scenario.exception_handler(e, context)
        return self.run_hooks(after, context)

    def _is_scenario_duplicate(self, kind: ScenarioKind) -> None:
        try:
            self.get_scenario(kind)
            raise DuplicateScenarioName(kind.value)
        except ScenarioNotFound:
            return

    def remove_scenario(self, kind: ScenarioKind) -> Scenario:
        """
        Raises:
            ScenarioNotFound: If no scenario of this kind is registered

        """
        return self.scenarios.pop(self._get_scenario_and_index(kind)[1])

    def get_scenario(self, kind: ScenarioKind) -> Scenario:
        """
        Raises:
            ScenarioNotFound: If no scenario of this kind is registered

        """
        return self._get_scenario_and_index(kind)[0]

    def _get_scenario_and_index(self, kind: ScenarioKind) -> Tuple[Scenario, int]:
        try:
            kind = ScenarioKind(kind)
        except ValueError:
            raise ScenarioNotFound(str(kind))
        for index, scenario in enumerate(self.scenarios):
            if scenario.kind == kind:
                return scenario, index
        raise ScenarioNotFound(kind.value)
