from pyqiemi.charger.charger import Charger, Sensing
from pyqiemi.charger.charger_action import ActionKind, ChargerAction, DemodEvent, EventKind
from pyqiemi.charger.charger_profile import ChargerProfile
from pyqiemi.charger.charger_state import ChargerState, Phase, PidState, Protocol, TerminationReason, Timers
from pyqiemi.charger.transition_log import TransitionLog, format_transition
