import numpy as np

from pyqiemi.exceptions import AliasingError, SampleRateMismatch, UnitMismatch
from pyqiemi.signal.trace import Trace, Unit


def sample_count(duration: float, sample_rate: float) -> int:
    return max(0, int(round(duration * sample_rate)))


def synth_sine(amplitude: float, freq: float, duration: float, sample_rate: float, phase: float = 0.0,
               unit: Unit = Unit.Volts, t0: float = 0.0) -> Trace:
    """
    Synthesize amplitude * sin(2*pi*freq*k/sample_rate + phase)

    Args:
        amplitude (float): Peak amplitude
        freq (float): Frequency in Hz
        duration (float): Length of the trace in seconds
        sample_rate (float): Samples per second
        phase (float): Phase offset in radians. Default: 0
        unit (Unit): Unit tag of the trace. Default: Unit.Volts
        t0 (float): Start time of the trace. Default: 0

    Returns:
        Trace: The synthesized sine

    Raises:
        AliasingError: If freq is not below the Nyquist frequency

    """
    if abs(freq) >= sample_rate / 2:
        raise AliasingError(freq, sample_rate)
    k = np.arange(sample_count(duration, sample_rate))
    return Trace(sample_rate, amplitude * np.sin(2 * np.pi * freq * k / sample_rate + phase), unit, t0)


def constant(value: float, duration: float, sample_rate: float, unit: Unit = Unit.Volts, t0: float = 0.0) -> Trace:
    return Trace(sample_rate, np.full(sample_count(duration, sample_rate), float(value)), unit, t0)


def superimpose(a: Trace, b: Trace) -> Trace:
    """
    Pointwise sum of two traces, truncated to the shorter one

    Raises:
        UnitMismatch: If the traces carry different units
        SampleRateMismatch: If the traces are sampled at different rates

    """
    if a.unit != b.unit:
        raise UnitMismatch(a.unit.value, b.unit.value)
    if a.sample_rate != b.sample_rate:
        raise SampleRateMismatch(a.sample_rate, b.sample_rate)
    length = min(len(a), len(b))
    return Trace(a.sample_rate, a.samples[:length] + b.samples[:length], a.unit, a.t0)
