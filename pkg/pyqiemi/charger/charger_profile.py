from dataclasses import dataclass
from typing import Tuple

from pyqiemi.circuit import BusMonitorMode
from pyqiemi.exceptions import ConfigurationError

POWER_TIERS = (5, 10, 15)


@dataclass(frozen=True)
class ChargerProfile:
    """
    Behaviour of one charger product. Times are in seconds, powers in watts.

    Raises:
        ConfigurationError: If the rated power is not one of the 5, 10 and 15 W tiers or a value is out of range
    """
    name: str
    rated_power: float
    adapter_voltage: float
    system: str = "typical"
    fod_loss_threshold: float = 0.35
    k_p: float = 0.004
    k_i: float = 0.0005
    pid_iterations: int = 16
    integrator_decay: float = 0.9
    min_duty: float = 0.05
    initial_duty: float = 0.3
    ping_duty: float = 0.2
    baseline_power_limit: float = 5.0
    ping_interval: float = 0.4
    sig_timeout: float = 0.065
    ce_timeout: float = 1.5
    rp_timeout: float = 24.0
    config_timeout: float = 0.5
    negotiation_timeout: float = 1.5
    cooldown: float = 5.0
    empty_pad_q: float = 40.0
    uvlo_fraction: float = 0.6484
    countermeasure: bool = False
    countermeasure_cutoff: float = 90.0
    bus_monitor: BusMonitorMode = BusMonitorMode.Off
    bus_monitor_threshold: float = 0.02
    sense_noise: float = 0.002
    charger_id: Tuple[int, int, int] = (0x12, 0x0042, 0x00000515)

    def __post_init__(self):
        if self.rated_power not in POWER_TIERS:
            raise ConfigurationError(f"Charger {self.name}: rated power {self.rated_power} W is not one of "
                                     f"{POWER_TIERS}")
        if not 0 < self.min_duty <= self.initial_duty <= 1 or not 0 < self.ping_duty <= 1:
            raise ConfigurationError(f"Charger {self.name}: duty settings out of range")
        for name in ("adapter_voltage", "ping_interval", "sig_timeout", "ce_timeout", "rp_timeout", "config_timeout",
                     "negotiation_timeout", "pid_iterations"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"Charger {self.name}: {name} must be positive")
        if self.cooldown < 0:
            raise ConfigurationError(f"Charger {self.name}: cooldown must not be negative")
        object.__setattr__(self, "bus_monitor", BusMonitorMode(self.bus_monitor))
        object.__setattr__(self, "charger_id", tuple(self.charger_id))
