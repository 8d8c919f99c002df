import logging
from enum import Enum

import numpy as np
from scipy import signal

from pyqiemi.signal import Trace

logger = logging.getLogger(__name__)

FILTER_ORDER = 2
DEFAULT_CUTOFF = 90.0
DEFAULT_MONITOR_THRESHOLD = 0.02


def _lowpass(cutoff: float, rate: float) -> np.ndarray:
    if not 0 < cutoff < rate / 2:
        raise ValueError(f"Cutoff {cutoff} Hz must be between 0 and {rate / 2} Hz")
    return signal.butter(FILTER_ORDER, cutoff, btype="lowpass", fs=rate, output="sos")


def countermeasure_filter(trace: Trace, cutoff: float = DEFAULT_CUTOFF) -> Trace:
    """
    DC/DC input filter: a causal 2nd-order Butterworth low-pass. Its DC gain is one and the filter
    starts in steady state with the first sample, so only the interference component is attenuated.
    """
    if len(trace) == 0:
        return trace
    sos = _lowpass(cutoff, trace.sample_rate)
    filtered, _ = signal.sosfilt(sos, trace.samples, zi=signal.sosfilt_zi(sos) * trace.samples[0])
    return trace.with_samples(filtered)


def attenuation_db(cutoff: float, freq: float, rate: float = 100e3) -> float:
    sos = _lowpass(cutoff, rate)
    _, response = signal.sosfreqz(sos, worN=[freq], fs=rate)
    return float(-20 * np.log10(np.abs(response[0])))


class BusMonitorMode(Enum):
    Off = "off"
    Alarm = "alarm"
    Shutdown = "shutdown"


class BusNoiseMonitor(object):
    def __init__(self, mode: BusMonitorMode = BusMonitorMode.Off, threshold: float = DEFAULT_MONITOR_THRESHOLD):
        """
        Watches the DC bus for injected noise

        Args:
            mode (BusMonitorMode): What an alarm does. Default: Off
            threshold (float): RMS of the bus AC part relative to V_bus that raises an alarm. Default: 0.02
        """
        self.mode = BusMonitorMode(mode)
        self.threshold = threshold
        self.alarms = 0

    def observe(self, relative_deviation: np.ndarray, t: float = 0.0) -> bool:
        """
        Check one window of bus deviation (relative to V_bus)

        Returns:
            bool: True if the bus must be shut down

        """
        if self.mode == BusMonitorMode.Off or len(relative_deviation) == 0:
            return False
        ac = relative_deviation - np.mean(relative_deviation)
        level = float(np.sqrt(np.mean(ac ** 2)))
        if level <= self.threshold:
            return False
        self.alarms += 1
        logger.warning(f"Bus noise {level:.4f} above threshold {self.threshold} at t={t:.3f}")
        return self.mode == BusMonitorMode.Shutdown

    def __repr__(self) -> str:
        return str({"mode": self.mode.value, "threshold": self.threshold, "alarms": self.alarms})
