from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence, Union

import numpy as np

from pyqiemi.exceptions import InvalidTrace


class Unit(Enum):
    Volts = "volts"
    Amperes = "amperes"
    Watts = "watts"
    Dimensionless = "dimensionless"
    Fahrenheit = "fahrenheit"


@dataclass(frozen=True, eq=False)
class Trace:
    """
    Uniformly sampled, immutable time series.

    Args:
        sample_rate (float): Samples per second, must be positive
        samples (Sequence[float]): Finite sample values
        unit (Unit): Physical unit of the samples. Default: Unit.Volts
        t0 (float): Time of the first sample in seconds. Default: 0

    Raises:
        InvalidTrace: If the sample rate is not positive or a sample is not finite
    """
    sample_rate: float
    samples: Union[np.ndarray, Sequence[float]]
    unit: Unit = Unit.Volts
    t0: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.sample_rate) or self.sample_rate <= 0:
            raise InvalidTrace(f"Sample rate must be positive, got {self.sample_rate}")
        samples = np.array(self.samples, dtype=float).reshape(-1)
        if not np.all(np.isfinite(samples)):
            raise InvalidTrace("Trace samples must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "unit", Unit(self.unit))
        object.__setattr__(self, "sample_rate", float(self.sample_rate))
        object.__setattr__(self, "t0", float(self.t0))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate

    def times(self) -> np.ndarray:
        return self.t0 + np.arange(len(self.samples)) / self.sample_rate

    def index_of(self, t: float) -> int:
        return int(round((t - self.t0) * self.sample_rate))

    def slice(self, t_start: float, t_stop: float) -> "Trace":
        start = max(0, self.index_of(t_start))
        stop = min(len(self.samples), max(start, self.index_of(t_stop)))
        return replace(self, samples=self.samples[start:stop], t0=self.t0 + start / self.sample_rate)

    def with_samples(self, samples: Union[np.ndarray, Sequence[float]]) -> "Trace":
        return replace(self, samples=samples)

    def __repr__(self) -> str:
        return str({"sample_rate": self.sample_rate, "length": len(self.samples), "unit": self.unit.value,
                    "t0": self.t0})
