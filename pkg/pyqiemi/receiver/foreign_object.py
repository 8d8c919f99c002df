import logging
from dataclasses import dataclass, replace
from typing import Dict, Mapping, Sequence

from pyqiemi.exceptions import ConfigurationError
from pyqiemi.receiver.thermal import ThermalBody, thermal_step

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForeignObject:
    """
    Metallic or tagged object lying on the charging pad

    Args:
        name (str): key_fob, paper_clip, usb_drive, ssd, passport_rfid, nfc_card or a custom profile
        thermal (ThermalBody): Object body
        absorption (float): Fraction of the transmitted power absorbed, in (0, 1]
        damage_temp (float): Temperature (°F) at which the object is destroyed
        pad_q (float): Q-factor a charger measures with the object on the pad
        damaged (bool): Latched once damage_temp is reached

    Raises:
        ConfigurationError: If absorption is outside (0, 1]
    """
    name: str
    thermal: ThermalBody
    absorption: float
    damage_temp: float
    pad_q: float = 6.0
    damaged: bool = False

    def __post_init__(self):
        if not 0 < self.absorption <= 1:
            raise ConfigurationError(f"Object {self.name}: absorption must be in (0, 1], got {self.absorption}")

    @property
    def temp(self) -> float:
        return self.thermal.temp


def foreign_object_step(obj: ForeignObject, transmitted_power: float, dt: float) -> ForeignObject:
    temp = thermal_step(obj.thermal, obj.absorption * transmitted_power, dt)
    damaged = obj.damaged or temp >= obj.damage_temp
    if damaged and not obj.damaged:
        logger.debug(f"{obj.name} destroyed at {temp:.1f} °F")
    return replace(obj, thermal=obj.thermal.at(temp), damaged=damaged)


def damage_matrix(objects: Sequence[ForeignObject], tier_powers: Mapping[str, float], duration: float = 300.0,
                  dt: float = 0.1) -> Dict[str, Dict[str, ForeignObject]]:
    """
    Sustain each tier's transmitted power on a fresh copy of every object

    Args:
        objects (Sequence[ForeignObject]): Object profiles at their initial temperature
        tier_powers (Mapping[str, float]): Transmitted power in watts per charger tier name
        duration (float): Exposure in seconds
        dt (float): Integration step in seconds

    Returns:
        Dict[str, Dict[str, ForeignObject]]: Final object per tier name and object name

    """
    steps = int(round(duration / dt))
    matrix = {}
    for tier, power in tier_powers.items():
        matrix[tier] = {}
        for obj in objects:
            for _ in range(steps):
                obj = foreign_object_step(obj, power, dt)
            matrix[tier][obj.name] = obj
    return matrix
