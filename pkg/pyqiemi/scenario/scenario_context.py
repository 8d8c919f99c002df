from typing import TYPE_CHECKING, Dict, List, Optional

from pyqiemi.charger import TransitionLog
from pyqiemi.config import ProfileLibrary
from pyqiemi.eavesdropper import RecoveredMessage
from pyqiemi.scenario.scenario_config import ScenarioConfig
from pyqiemi.scenario.scenario_report import ScenarioReport
from pyqiemi.signal import Trace

if TYPE_CHECKING:
    from pyqiemi.channel import ChargingChannel


class ScenarioContext(object):
    def __init__(self, config: ScenarioConfig, library: ProfileLibrary):
        """
        Everything one scenario run reads and produces. Hooks receive and return it.

        Args:
            config (ScenarioConfig): The run configuration
            library (ProfileLibrary): Profiles the configuration refers to
        """
        self.config = config
        self.library = library
        self.report = ScenarioReport(config.scenario, config.seed)
        self.log = TransitionLog()
        self.channel: Optional["ChargingChannel"] = None
        self.traces: Dict[str, Trace] = {}
        self.messages: List[RecoveredMessage] = []

    def __repr__(self) -> str:
        return str({"scenario": self.config.name, "seed": self.config.seed, "status": self.report.status.value})
