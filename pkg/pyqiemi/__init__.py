__version__ = "1.0.0"

from pyqiemi import exceptions
from pyqiemi.attacker import ActionType, AttackAction, AttackKind, AttackPlan, Attacker
from pyqiemi.channel import ChargingChannel
from pyqiemi.charger import Charger, ChargerProfile, ChargerState, Phase, Protocol
from pyqiemi.circuit import InterferenceSpec, SystemParams, scaling_factor
from pyqiemi.codec import FskResponse, QiPacket
from pyqiemi.config import ProfileLibrary
from pyqiemi.eavesdropper import RecoveredMessage, recover_ask, recover_fsk
from pyqiemi.receiver import ForeignObject, ReceiverProfile
from pyqiemi.scenario import (ScenarioConfig, ScenarioKind, ScenarioReport, ScenarioRouter, ScenarioStatus,
                              run_scenario, sweep)
from pyqiemi.signal import Trace, Unit
