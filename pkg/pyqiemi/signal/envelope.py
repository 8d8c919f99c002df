from typing import Optional

import numpy as np
from scipy import signal

from pyqiemi.exceptions import EnvelopeBandwidthError
from pyqiemi.signal.trace import Trace

MIN_BANDWIDTH_RATIO = 10
FILTER_ORDER = 4
BANDWIDTH_ENERGY = 0.99
STEADY_FLOOR = 5e-3


def envelope(trace: Trace, carrier_freq: float, bandwidth: Optional[float] = None) -> Trace:
    """
    Amplitude envelope of a carrier: full-wave rectification followed by a 4th-order
    Butterworth low-pass at carrier_freq / 5. The output keeps the input sample rate.

    Args:
        trace (Trace): Carrier-domain trace
        carrier_freq (float): Carrier frequency in Hz
        bandwidth (float): Expected envelope bandwidth in Hz. Default: measured on the extracted envelope

    Returns:
        Trace: The envelope, scaled so an unmodulated sine of amplitude A yields A

    Raises:
        EnvelopeBandwidthError: If the carrier is not at least ten times the envelope bandwidth, or
                                the rectified carrier cannot be represented at the trace's sample rate

    """
    if carrier_freq <= 0 or trace.sample_rate < 4 * carrier_freq:
        raise EnvelopeBandwidthError(carrier_freq, trace.sample_rate)
    if bandwidth is not None and carrier_freq < MIN_BANDWIDTH_RATIO * bandwidth:
        raise EnvelopeBandwidthError(carrier_freq, trace.sample_rate, bandwidth)
    if len(trace) == 0:
        return trace
    sos = signal.butter(FILTER_ORDER, carrier_freq / 5, btype="lowpass", fs=trace.sample_rate, output="sos")
    rectified = np.abs(trace.samples)
    if len(rectified) > 3 * (2 * len(sos) + 1):
        smoothed = signal.sosfiltfilt(sos, rectified)
    else:
        smoothed = np.full(len(rectified), rectified.mean())
    result = trace.with_samples(smoothed * np.pi / 2)
    if bandwidth is None:
        measured = envelope_bandwidth(result)
        if carrier_freq < MIN_BANDWIDTH_RATIO * measured:
            raise EnvelopeBandwidthError(carrier_freq, trace.sample_rate, measured)
    return result


def envelope_bandwidth(trace: Trace, trim: float = 0.1) -> float:
    """
    Frequency below which 99% of the fluctuation energy of an envelope lies, ignoring `trim` of its
    length at each end. A steady envelope, fluctuating by less than half a percent of its level, has none.
    """
    samples = trace.samples
    skip = int(len(samples) * trim)
    steady = samples[skip:len(samples) - skip] if len(samples) > 2 * skip + 1 else samples
    if len(steady) < 2:
        return 0.0
    fluctuation = steady - np.mean(steady)
    if np.sqrt(np.mean(fluctuation ** 2)) <= STEADY_FLOOR * abs(float(np.mean(steady))):
        return 0.0
    energy = np.abs(np.fft.rfft(fluctuation * np.hanning(len(fluctuation)))) ** 2
    total = float(energy.sum())
    if total == 0:
        return 0.0
    freqs = np.fft.rfftfreq(len(fluctuation), d=1 / trace.sample_rate)
    return float(freqs[np.searchsorted(np.cumsum(energy), BANDWIDTH_ENERGY * total)])


def modulation_depth(trace: Trace, trim: float = 0.1) -> float:
    """
    (max - min) / (max + min) of an envelope, ignoring `trim` of its length at each end.
    """
    samples = trace.samples
    skip = int(len(samples) * trim)
    steady = samples[skip:len(samples) - skip] if len(samples) > 2 * skip else samples
    if len(steady) == 0:
        return 0.0
    high, low = float(np.max(steady)), float(np.min(steady))
    if high + low == 0:
        return 0.0
    return (high - low) / (high + low)
