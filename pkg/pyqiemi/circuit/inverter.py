import numpy as np

from pyqiemi.exceptions import InvalidSystemParams
from pyqiemi.signal import Trace, Unit
from pyqiemi.signal.synthesis import sample_count

MIN_SAMPLES_PER_PERIOD = 10


def inverter_staircase(v_bus: float, duty: float, f_p: float, duration: float, rate: float,
                       t0: float = 0.0) -> Trace:
    """
    Full-bridge inverter output: +v_bus on (T/4)(1-D) < t < (T/4)(1+D), -v_bus on the same
    interval shifted by T/2, zero otherwise, with T = 1/f_p

    Raises:
        InvalidSystemParams: If rate is below 10 * f_p

    """
    if rate < MIN_SAMPLES_PER_PERIOD * f_p:
        raise InvalidSystemParams(f"inverter sample rate {rate} is below {MIN_SAMPLES_PER_PERIOD} * f_p")
    t = t0 + np.arange(sample_count(duration, rate)) / rate
    position = np.mod(t * f_p, 1.0)
    half_width = duty / 4
    positive = np.abs(position - 0.25) < half_width
    negative = np.abs(position - 0.75) < half_width
    return Trace(rate, v_bus * (positive.astype(float) - negative.astype(float)), Unit.Volts, t0)


def inverter_fundamental(v_bus: float, duty: float) -> float:
    return 4 / np.pi * np.sin(np.pi * duty / 2) * v_bus
