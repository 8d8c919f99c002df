from pyqiemi.receiver.foreign_object import ForeignObject, damage_matrix, foreign_object_step
from pyqiemi.receiver.receiver import ReceiverState, RxPhase, rx_step
from pyqiemi.receiver.receiver_profile import Protection, ProtectionThresholds, ReceiverProfile, protection_check
from pyqiemi.receiver.thermal import ThermalBody, thermal_step
