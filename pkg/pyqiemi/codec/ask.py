import logging
from typing import List, Optional, Sequence

import numpy as np

from pyqiemi.codec.bmc import Level, bmc_decode, bmc_encode
from pyqiemi.exceptions import DemodulationFailure
from pyqiemi.signal import Trace, Unit

logger = logging.getLogger(__name__)

ASK_FREQUENCY = 2000.0
MIN_SAMPLES_PER_BIT = 20
SEPARATION_FACTOR = 3
RELOCK_RADIUS = 2


def half_bit_edges(count: int, rate: float, f_ask: float) -> np.ndarray:
    return np.round(np.arange(count + 1) * rate / (2 * f_ask)).astype(int)


def ask_modulate(bits: Sequence[int], f_ask: float = ASK_FREQUENCY, depth: float = 0.05, rate: float = 100e3,
                 t0: float = 0.0) -> Trace:
    """
    Load-modulation waveform of a bit stream: BMC half-bits starting from an idle LOW line,
    LOW mapped to 0 and HIGH to `depth`.

    Args:
        bits (Sequence[int]): Bits to send
        f_ask (float): Bit clock in Hz. Default: 2000
        depth (float): Modulation depth of the HIGH level. Default: 0.05
        rate (float): Envelope-domain sample rate. Default: 100 kS/s
        t0 (float): Start time of the waveform

    Returns:
        Trace: Dimensionless modulation, zero-length for an empty bit stream

    """
    if rate < MIN_SAMPLES_PER_BIT * f_ask:
        raise ValueError(f"Sample rate {rate} is below {MIN_SAMPLES_PER_BIT} * f_ask")
    levels = np.array(bmc_encode(bits, f_ask, Level.Low), dtype=float)
    counts = np.diff(half_bit_edges(len(levels), rate, f_ask))
    return Trace(rate, np.repeat(levels * depth, counts), Unit.Dimensionless, t0)


def step_statistic(samples: np.ndarray, width: int) -> np.ndarray:
    """
    Level step at every sample, measured between the `width` samples after and before it, minus a
    third of the same difference taken one window further out. Constant, linear and quadratic trends
    cancel; an ideal step of height d scores 2d/3.
    """
    statistic = np.zeros(len(samples))
    if len(samples) < 4 * width + 1:
        return statistic
    cumulative = np.concatenate(([0.0], np.cumsum(samples)))
    j = np.arange(2 * width, len(samples) - 2 * width + 1)

    def window_mean(start: np.ndarray) -> np.ndarray:
        return (cumulative[start + width] - cumulative[start]) / width

    inner = window_mean(j) - window_mean(j - width)
    outer = window_mean(j + width) - window_mean(j - 2 * width)
    statistic[j] = inner - outer / 3
    return statistic


def noise_floor(samples: np.ndarray) -> float:
    if len(samples) < 2:
        return 0.0
    return float(np.median(np.abs(np.diff(samples))) / 0.6745 / np.sqrt(2))


def _walk(statistic: np.ndarray, start: int, half_bit: float, threshold: float) -> List[bool]:
    transitions = []
    expected = float(start)
    magnitude = np.abs(statistic)
    while True:
        centre = int(round(expected))
        if centre >= len(statistic):
            break
        low, high = max(centre - RELOCK_RADIUS, 0), min(centre + RELOCK_RADIUS + 1, len(statistic))
        peak = low + int(np.argmax(magnitude[low:high]))
        present = magnitude[peak] >= threshold
        if len(transitions) % 2 == 0 and not present:
            break
        transitions.append(bool(present))
        expected = (peak if present else expected) + half_bit
    return transitions


def ask_demodulate(envelope: Trace, f_ask: float = ASK_FREQUENCY, noise: Optional[float] = None) -> List[int]:
    """
    Recover bits from an ASK envelope. The envelope must start with idle carrier. Transitions are found
    with step_statistic, the clock locks to the first transition and re-locks at every transition, and a
    half-bit boundary carries a transition when the statistic exceeds the midpoint between no step and
    the typical step. Decoding stops at the first bit boundary without a transition.

    Args:
        envelope (Trace): Envelope-domain trace, any scale and offset
        f_ask (float): Bit clock in Hz. Default: 2000
        noise (float): Sample noise level. Default: estimated from the trace

    Returns:
        List[int]: Decoded bits

    Raises:
        DemodulationFailure: If the level separation is below three times the noise floor

    """
    samples = envelope.samples
    half_bit = envelope.sample_rate / (2 * f_ask)
    width = max(1, int(half_bit // 6))
    sigma = noise_floor(samples) if noise is None else noise
    statistic = step_statistic(samples, width)
    magnitude = np.abs(statistic)
    peak = float(magnitude.max()) if len(magnitude) else 0.0
    scale = float(np.max(np.abs(samples))) if len(samples) else 0.0
    if peak <= 1e-9 * (scale or 1.0):
        raise DemodulationFailure(0.0, sigma)

    start = int(np.flatnonzero(magnitude > 0.5 * peak)[0])
    while start + 1 < len(magnitude) and magnitude[start + 1] > magnitude[start]:
        start += 1

    first_pass = _walk(statistic, start, half_bit, 0.5 * magnitude[start])
    boundary_steps = _transition_magnitudes(statistic, start, half_bit, first_pass)
    step = float(np.median(boundary_steps))
    separation = 1.5 * step
    if separation < SEPARATION_FACTOR * sigma or step <= 1e-9 * (scale or 1.0):
        raise DemodulationFailure(separation, sigma)

    transitions = _walk(statistic, start, half_bit, step / 2)
    level = Level.Low
    levels = []
    for present in transitions:
        if present:
            level = Level(1 - level)
        levels.append(level)
    bits = bmc_decode(levels, f_ask, strict=False)
    logger.debug(f"Demodulated {len(bits)} bits, step {step:.4g}, noise {sigma:.4g}")
    return bits


def _transition_magnitudes(statistic: np.ndarray, start: int, half_bit: float, transitions: List[bool]) -> np.ndarray:
    magnitudes = []
    expected = float(start)
    magnitude = np.abs(statistic)
    for index, present in enumerate(transitions):
        centre = min(int(round(expected)), len(statistic) - 1)
        low, high = max(centre - RELOCK_RADIUS, 0), min(centre + RELOCK_RADIUS + 1, len(statistic))
        peak = low + int(np.argmax(magnitude[low:high]))
        if present and index % 2 == 0:
            magnitudes.append(magnitude[peak])
        expected = (peak if present else expected) + half_bit
    return np.array(magnitudes) if magnitudes else np.array([magnitude[start]])
