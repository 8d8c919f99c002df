import math
from dataclasses import dataclass, replace

from pyqiemi.exceptions import ConfigurationError

# explicit Euler stays monotone while dt * dissipation / heat_capacity is at most this
MAX_STEP_FRACTION = 0.5


@dataclass(frozen=True)
class ThermalBody:
    """
    Lumped first-order thermal model. Temperatures are in degrees Fahrenheit.

    Args:
        heat_capacity (float): J/°F
        dissipation (float): W/°F towards ambient
        ambient (float): Surrounding temperature
        temp (float): Current temperature. Default: ambient

    Raises:
        ConfigurationError: If heat capacity or dissipation is not positive
    """
    heat_capacity: float
    dissipation: float
    ambient: float = 77.0
    temp: float = None

    def __post_init__(self):
        if self.heat_capacity <= 0 or self.dissipation <= 0:
            raise ConfigurationError(f"Thermal body needs positive heat capacity and dissipation, "
                                     f"got {self.heat_capacity} and {self.dissipation}")
        if self.temp is None:
            object.__setattr__(self, "temp", float(self.ambient))

    def steady_state(self, power_in: float) -> float:
        return self.ambient + power_in / self.dissipation

    def at(self, temp: float) -> "ThermalBody":
        return replace(self, temp=temp)


def thermal_step(body: ThermalBody, power_in: float, dt: float) -> float:
    """
    temp' = temp + dt * (power_in - dissipation * (temp - ambient)) / heat_capacity

    A dt too long for one stable Euler step is split into equal substeps of at most
    MAX_STEP_FRACTION * heat_capacity / dissipation seconds.

    Raises:
        ValueError: If dt is not positive

    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    substeps = max(1, math.ceil(dt * body.dissipation / body.heat_capacity / MAX_STEP_FRACTION))
    h = dt / substeps
    temp = body.temp
    for _ in range(substeps):
        temp += h * (power_in - body.dissipation * (temp - body.ambient)) / body.heat_capacity
    return temp
