from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Optional

from pyqiemi.codec import QiPacket
from pyqiemi.exceptions import ConfigurationError
from pyqiemi.receiver.thermal import ThermalBody


class Protection(Enum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"


@dataclass(frozen=True)
class ProtectionThresholds:
    """Stop charging at p1, restrict interaction at p2, shut down at p3 (°F)."""
    p1: float = 113.0
    p2: float = 126.0
    p3: float = 170.0

    def __post_init__(self):
        if not self.p1 <= self.p2 <= self.p3:
            raise ConfigurationError(f"Protection thresholds must be ordered, got {self.p1}, {self.p2}, {self.p3}")


def default_phone_thermal() -> ThermalBody:
    return ThermalBody(heat_capacity=4.0, dissipation=0.178, ambient=77.0)


@dataclass(frozen=True)
class ReceiverProfile:
    """
    A charged device

    Args:
        name (str): Profile name
        target_power (float): Power the device asks for in watts
        neg_bit (bool): Whether the device negotiates the extended protocol
        thermal (ThermalBody): Device body, starting at ambient
        protection_thresholds (ProtectionThresholds): P1/P2/P3 temperatures
        ask_depth (float): Load-modulation depth of its ASK transmissions
        coupling_efficiency (float): Received power as a fraction of transmitted power
        heat_fraction (float): Share of the charging power turned into heat
        reference_q (int): Reference Q-factor in tenths, sent in the FOD packet
        pad_q (float): Q-factor a charger measures with the device on the pad
        voice_activation_depth (float): Coil envelope depth that triggers the voice assistant
        charge_complete_after (float): Seconds of charging after which the device ends power transfer. Default: never

    Raises:
        ConfigurationError: If a value is out of range
    """
    name: str
    target_power: float = 10.0
    neg_bit: bool = True
    thermal: ThermalBody = field(default_factory=default_phone_thermal)
    protection_thresholds: ProtectionThresholds = field(default_factory=ProtectionThresholds)
    ask_depth: float = 0.05
    coupling_efficiency: float = 0.99
    heat_fraction: float = 0.25
    reference_q: int = 150
    pad_q: float = 18.0
    signal_strength: int = 0x84
    version: int = 0x12
    manufacturer_code: int = 0x004C
    device_identifier: int = 0x00A1B2C3
    voice_activation_depth: float = 0.1
    charge_complete_after: Optional[float] = None
    ce_interval: float = 0.25
    rp_interval: float = 1.5

    def __post_init__(self):
        if self.target_power <= 0:
            raise ConfigurationError(f"Receiver {self.name}: target power must be positive")
        for name in ("ask_depth", "coupling_efficiency", "heat_fraction"):
            if not 0 < getattr(self, name) <= 1:
                raise ConfigurationError(f"Receiver {self.name}: {name} must be in (0, 1]")
        if not 0 <= self.reference_q <= 0xFF:
            raise ConfigurationError(f"Receiver {self.name}: reference_q must fit one byte")

    @property
    def device_id(self) -> bytes:
        return self.identification().payload

    def identification(self) -> QiPacket:
        return QiPacket.identification(self.version, self.manufacturer_code, self.device_identifier)


def protection_check(profile: ReceiverProfile, temp: float,
                     latched: FrozenSet[Protection] = frozenset()) -> FrozenSet[Protection]:
    """
    Protections active at `temp`, together with those already latched
    """
    thresholds = profile.protection_thresholds
    active = set(latched)
    for protection, threshold in ((Protection.P1, thresholds.p1), (Protection.P2, thresholds.p2),
                                  (Protection.P3, thresholds.p3)):
        if temp >= threshold:
            active.add(protection)
    return frozenset(active)
