"""
Adapter-side propagation: interference on the adapter output reaching the DC bus, and load
changes on the bus reaching back to the adapter output.
"""
from typing import Sequence, Tuple, Union

import numpy as np
from scipy import signal

from pyqiemi.circuit.system_params import InterferenceSpec, SystemParams
from pyqiemi.exceptions import DegenerateCircuit
from pyqiemi.signal import Trace, Unit
from pyqiemi.signal.synthesis import sample_count

SETTLE_TAU = 200e-6
SETTLE_SPAN = 10


def scaling_factor(p: SystemParams, f_i: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Voltage scaling factor K(f_i) from adapter output to DC bus

    Args:
        p (SystemParams): Circuit parameters
        f_i (float): Interference frequency in Hz, scalar or array

    Returns:
        float: K in (0, 1], monotone non-increasing in f_i

    """
    series = p.r_eq + p.r_cable
    denominator = series + p.z_ad + 2j * np.pi * np.asarray(f_i) * p.r_eq * (p.r_cable + p.z_ad) * p.c_bus
    k = series / np.abs(denominator)
    return float(k) if np.ndim(k) == 0 else k


def bus_dc_voltage(p: SystemParams) -> float:
    return p.r_eq / (p.r_eq + p.r_cable + p.z_ad) * p.v_ad


def propagate_interference(p: SystemParams, interference: Union[Trace, np.ndarray],
                           rate: float = None) -> np.ndarray:
    """
    Relative bus deviation caused by a relative adapter deviation, applying K(f) to every
    spectral component.

    Args:
        p (SystemParams): Circuit parameters
        interference (Trace): Adapter deviation relative to V_ad (m_i * w(t)), or raw samples with `rate`
        rate (float): Sample rate, required when raw samples are passed

    Returns:
        np.ndarray: Bus deviation relative to V_bus, same length as the input

    """
    if isinstance(interference, Trace):
        samples, rate = interference.samples, interference.sample_rate
    else:
        samples = np.asarray(interference, dtype=float)
    if len(samples) == 0 or not np.any(samples):
        return np.zeros(len(samples))
    spectrum = np.fft.rfft(samples)
    freqs = np.fft.rfftfreq(len(samples), d=1 / rate)
    return np.fft.irfft(spectrum * scaling_factor(p, freqs), n=len(samples))


def bus_voltage(p: SystemParams, interference: InterferenceSpec, duration: float, rate: float) -> Trace:
    """
    Bus voltage v_bus(t) = V_bus * (1 + K * m_i * w(t)). Sine interference uses K(f_i) directly,
    arbitrary waveforms are propagated per spectral component.
    """
    v_bus = bus_dc_voltage(p)
    w = interference.normalized_waveform(duration, rate)
    if interference.is_sine:
        deviation = scaling_factor(p, interference.f_i) * interference.m_i * w
    else:
        deviation = propagate_interference(p, interference.m_i * w, rate)
    return Trace(rate, v_bus * (1 + deviation), Unit.Volts)


def _ripple_amplitude(p: SystemParams, i_bus_dc: Union[float, np.ndarray], phi_total: float,
                      f_p: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    cos_phi = np.cos(phi_total)
    if abs(cos_phi) < 1e-12:
        raise DegenerateCircuit("cos(phi_total) is zero, the load is purely reactive")
    bus_filter = np.abs(1 + 4j * np.pi * np.asarray(f_p) * p.c_bus * (p.r_cable + p.z_ad))
    return p.z_ad * i_bus_dc / (cos_phi * bus_filter)


def adapter_ripple(p: SystemParams, i_bus_dc: float, phi_total: float, duration: float, rate: float,
                   t0: float = 0.0) -> Trace:
    """
    Adapter output ripple at 2 * f_p caused by the AC part of the bus current

    Raises:
        DegenerateCircuit: If cos(phi_total) is zero

    """
    amplitude = _ripple_amplitude(p, i_bus_dc, phi_total, p.f_p)
    t = t0 + np.arange(sample_count(duration, rate)) / rate
    return Trace(rate, amplitude * np.sin(2 * np.pi * 2 * p.f_p * t + phi_total), Unit.Volts, t0)


def adapter_ripple_schedule(p: SystemParams, i_bus_dc: float, phi_total: float,
                            schedule: Sequence[Tuple[float, float]], rate: float, t0: float = 0.0) -> Trace:
    """
    Phase-continuous adapter ripple following an FSK frequency schedule: each (freq, duration)
    segment ripples at 2 * freq.
    """
    if schedule:
        edges = np.round(np.concatenate(([0.0], np.cumsum([duration for _, duration in schedule]))) * rate)
        freqs = np.repeat([freq for freq, _ in schedule], np.diff(edges.astype(int)))
    else:
        freqs = np.zeros(0)
    amplitude = _ripple_amplitude(p, i_bus_dc, phi_total, freqs)
    phase = 2 * np.pi * np.cumsum(2 * freqs) / rate
    return Trace(rate, amplitude * np.sin(phase + phi_total), Unit.Volts, t0)


def load_change_kernel(p: SystemParams, rate: float) -> np.ndarray:
    """
    Discrete derivative kernel of the adapter response to bus-current changes: opposite impulses of
    area Z_ad one sample apart, each followed by exponential settling with time constant SETTLE_TAU.
    The kernel sums to zero, so a sustained load change leaves no steady-state deviation.
    """
    length = max(2, int(np.ceil(SETTLE_SPAN * SETTLE_TAU * rate)))
    settle = np.exp(-np.arange(length) / (SETTLE_TAU * rate))
    return -p.z_ad * np.diff(np.concatenate(([0.0], settle, [0.0])))


def load_change_response(p: SystemParams, load_current: Trace) -> Trace:
    """
    Adapter voltage deviation caused by load steps: every step of size s produces a pulse of peak
    -Z_ad * s that settles with time constant SETTLE_TAU.

    Args:
        p (SystemParams): Circuit parameters
        load_current (Trace): Bus load current in amperes at the envelope-domain rate

    Returns:
        Trace: Adapter voltage deviation in volts

    """
    if len(load_current) == 0:
        return Trace(load_current.sample_rate, [], Unit.Volts, load_current.t0)
    kernel = load_change_kernel(p, load_current.sample_rate)
    response = signal.fftconvolve(load_current.samples - load_current.samples[0], kernel)[:len(load_current)]
    return Trace(load_current.sample_rate, response, Unit.Volts, load_current.t0)
