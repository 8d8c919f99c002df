"""
Passive recovery of receiver ASK packets from the adapter voltage. Every load transition of the
receiver leaves a settling pulse on the adapter output. The pulses are sharpened back into
impulses, smoothed with the triangle filter and shift-differenced, which leaves a per half-bit
value whose sign is the half-bit level.

Both filters run at the BMC transition rate, twice the bit clock. A triangle of half-width 1/f_ask
has a spectral null at every multiple of f_ask, and a run of ONE bits (the whole preamble) is a
square wave at f_ask with all of its energy on those multiples.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from pyqiemi.circuit import SystemParams, bus_current, coil_current_amplitude, load_change_response
from pyqiemi.circuit.adapter import SETTLE_TAU
from pyqiemi.codec import Level, QiPacket, ask_modulate, bmc_decode, frame_packet, parse_with_repair
from pyqiemi.codec.ask import ASK_FREQUENCY
from pyqiemi.eavesdropper.filters import filter_h1, filter_h2
from pyqiemi.eavesdropper.recovered_message import Direction, RecoveredMessage
from pyqiemi.exceptions import PacketParseError
from pyqiemi.signal import Trace, Unit

logger = logging.getLogger(__name__)

THRESHOLD_FRACTION = 0.5
PERCENTILE = 95
MERGE_HALF_BITS = 4
MIN_WINDOW_BITS = 11
LOCK_FRACTION = 0.75
LOCK_RADIUS = 3
REPAIRED_CONFIDENCE = 0.5


def sharpen_pulses(trace: Trace, settle_tau: float = SETTLE_TAU) -> np.ndarray:
    """Undo the exponential settling of the adapter so every load step becomes one impulse."""
    decay = np.exp(-1 / (settle_tau * trace.sample_rate))
    samples = trace.samples - np.median(trace.samples) if len(trace) else trace.samples
    sharpened = samples.copy()
    sharpened[1:] -= decay * samples[:-1]
    return sharpened


def half_bit_statistic(trace: Trace, f_ask: float = ASK_FREQUENCY) -> np.ndarray:
    """
    h1 then h2 at the half-bit rate 2 * f_ask. At the centre of half-bit k the result is proportional to
    2 * l[k] - l[k-1] - l[k+1], whose sign is the level l[k] whenever a neighbour differs.
    """
    impulses = trace.with_samples(sharpen_pulses(trace))
    return filter_h2(filter_h1(impulses, 2 * f_ask), 2 * f_ask).samples


def recover_ask(adapter_trace: Trace, f_ask: float = ASK_FREQUENCY) -> List[RecoveredMessage]:
    """
    Recover every receiver packet visible in an adapter-voltage trace

    Args:
        adapter_trace (Trace): Adapter voltage deviation at the envelope-domain rate
        f_ask (float): ASK bit clock in Hz. Default: 2000

    Returns:
        List[RecoveredMessage]: Packets in time order, empty when nothing decodes

    """
    if len(adapter_trace) == 0:
        return []
    statistic = half_bit_statistic(adapter_trace, f_ask)
    magnitude = np.abs(statistic)
    level = float(np.percentile(magnitude, PERCENTILE))
    if level <= 0:
        return []
    half_bit = adapter_trace.sample_rate / (2 * f_ask)
    messages = []
    for low, high in _windows(magnitude, THRESHOLD_FRACTION * level / 2, half_bit):
        messages.extend(_decode_window(adapter_trace, statistic, low, high, half_bit, f_ask))
    logger.debug(f"Recovered {len(messages)} ASK packets from {len(adapter_trace)} samples")
    return messages


def _windows(magnitude: np.ndarray, threshold: float, half_bit: float) -> List[Tuple[int, int]]:
    active = np.flatnonzero(magnitude > threshold)
    if len(active) == 0:
        return []
    breaks = np.flatnonzero(np.diff(active) > MERGE_HALF_BITS * half_bit)
    starts = np.concatenate(([active[0]], active[breaks + 1]))
    stops = np.concatenate((active[breaks], [active[-1]])) + 1
    min_length = MIN_WINDOW_BITS * 2 * half_bit
    return [(int(start), int(min(stop + half_bit, len(magnitude)))) for start, stop in zip(starts, stops)
            if stop - start >= min_length]


def _decode_window(trace: Trace, statistic: np.ndarray, low: int, high: int, half_bit: float,
                   f_ask: float) -> List[RecoveredMessage]:
    magnitude = np.abs(statistic)
    threshold = THRESHOLD_FRACTION * float(np.percentile(magnitude[low:high], PERCENTILE))
    # the first half-bit after idle scores the window maximum, the idle half-bit before it only half
    lock_level = LOCK_FRACTION * float(magnitude[low:high].max())
    messages = []
    position = low
    while position < high and threshold > 0:
        crossings = np.flatnonzero(magnitude[position:high] > lock_level)
        if len(crossings) == 0:
            break
        start = position + int(crossings[0])
        stop = min(start + int(np.ceil(half_bit / 2)), high)
        peak = start + int(np.argmax(magnitude[start:stop]))
        origin = _lock_clock(magnitude, peak, high, half_bit)
        levels, end = _read_levels(statistic, origin, high, half_bit, threshold / 2)
        message = _parse(levels, trace.t0 + (origin - half_bit / 2) / trace.sample_rate, f_ask)
        if message is not None:
            messages.append(message)
        position = max(end, origin + int(np.ceil(half_bit)))
    return messages


def _lock_clock(magnitude: np.ndarray, peak: int, high: int, half_bit: float) -> int:
    best, best_score = peak, -1.0
    for origin in range(max(peak - LOCK_RADIUS, 0), min(peak + LOCK_RADIUS + 1, high)):
        positions = np.round(np.arange(origin, high, half_bit)).astype(int)
        score = float(magnitude[positions[positions < high]].sum())
        if score > best_score:
            best, best_score = origin, score
    return best


def _read_levels(statistic: np.ndarray, origin: int, high: int, half_bit: float,
                 floor: float) -> Tuple[List[Level], int]:
    polarity = np.sign(statistic[origin])
    levels = []
    index = 0
    while True:
        position = int(round(origin + index * half_bit))
        if position >= high or abs(statistic[position]) < floor:
            return levels, position
        levels.append(Level.High if statistic[position] * polarity > 0 else Level.Low)
        index += 1


def _parse(levels: List[Level], t_start: float, f_ask: float) -> Optional[RecoveredMessage]:
    bits = bmc_decode(levels, f_ask, initial_level=Level.Low, strict=False)
    try:
        packet, repaired = parse_with_repair(bits, allow_trailing=True)
    except PacketParseError as error:
        logger.debug(f"Window at t={t_start:.4f} did not parse: {error}")
        return None
    return RecoveredMessage(Direction.RxToTx, packet, REPAIRED_CONFIDENCE if repaired else 1.0, t_start)


def synthesize_adapter_trace(p: SystemParams, packet: QiPacket, rate: float = 100e3, noise_sigma: float = 0.0,
                             rng: np.random.Generator = None, depth: float = 0.05, idle: float = 2e-3,
                             f_ask: float = ASK_FREQUENCY) -> Trace:
    """
    Adapter voltage deviation while a receiver load-modulates `packet`: ASK levels become bus-current
    steps, which reach the adapter through the load-change response

    Args:
        p (SystemParams): Circuit parameters
        packet (QiPacket): Packet sent by the receiver
        rate (float): Envelope-domain sample rate. Default: 100 kS/s
        noise_sigma (float): Standard deviation of additive white measurement noise in volts. Default: 0
        rng (np.random.Generator): Noise source. Default: seeded with 0
        depth (float): Receiver modulation depth. Default: 0.05
        idle (float): Unmodulated time before and after the packet in seconds

    Returns:
        Trace: Adapter voltage deviation in volts

    """
    modulation = ask_modulate(frame_packet(packet), f_ask, depth, rate).samples
    padding = np.zeros(int(round(idle * rate)))
    levels = np.concatenate((padding, modulation, padding))
    i_bus_dc, _, _ = bus_current(p, coil_current_amplitude(p))
    response = load_change_response(p, Trace(rate, i_bus_dc * (1 + levels), Unit.Amperes)).samples
    if noise_sigma > 0:
        rng = rng or np.random.default_rng(0)
        response = response + rng.normal(0.0, noise_sigma, len(response))
    return Trace(rate, response, Unit.Volts)
