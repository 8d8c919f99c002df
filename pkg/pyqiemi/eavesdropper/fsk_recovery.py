"""
Passive recovery of charger FSK responses. The bus current ripples at twice the operating
frequency, so frequency switching of the power signal shows up on the adapter output as
switching of a ripple near 2 * f_p.
"""
import logging
from typing import List, Tuple

import numpy as np

from pyqiemi.circuit import (SystemParams, adapter_ripple_schedule, bus_current, coil_current_amplitude,
                             phase_total)
from pyqiemi.codec import FskResponse, Level, bmc_decode, fsk_modulate, parse_fsk_response
from pyqiemi.codec.fsk import CYCLES_PER_BIT, FSK_DEVIATION
from pyqiemi.eavesdropper.recovered_message import Direction, RecoveredMessage
from pyqiemi.exceptions import PacketParseError, TraceTooShort
from pyqiemi.signal import Trace, dominant_frequencies, stft
from pyqiemi.signal.spectrogram import DEFAULT_HOP, DEFAULT_WINDOW_SIZE

logger = logging.getLogger(__name__)

NOISE_FRACTION = 0.1
GAP_HALF_BITS = 4


def recover_fsk(adapter_trace: Trace, f_p_nominal: float, delta_f: float = FSK_DEVIATION,
                window_size: int = DEFAULT_WINDOW_SIZE, hop: int = DEFAULT_HOP,
                cycles_per_bit: int = CYCLES_PER_BIT) -> List[RecoveredMessage]:
    """
    Recover the charger responses in the adapter ripple

    Args:
        adapter_trace (Trace): Carrier-domain adapter voltage deviation
        f_p_nominal (float): Operating frequency of the charger in Hz
        delta_f (float): FSK deviation of the charger in Hz. Default: 1000
        window_size (int): STFT window. Default: 4096
        hop (int): STFT hop. Default: 1024
        cycles_per_bit (int): Operating-frequency cycles per FSK bit. Default: 512

    Returns:
        List[RecoveredMessage]: One message per response that parses, in time order

    """
    ripple_deviation = 2 * delta_f
    bin_width = adapter_trace.sample_rate / window_size
    if ripple_deviation < bin_width:
        logger.warning(f"Ripple deviation {ripple_deviation:.0f} Hz is below the {bin_width:.0f} Hz bin width, "
                       f"FSK responses cannot be resolved")
        return []
    try:
        spectrogram = stft(adapter_trace, window_size, hop)
    except TraceTooShort as error:
        logger.debug(f"No FSK recovery: {error}")
        return []

    centre = 2 * f_p_nominal
    tracked = dominant_frequencies(spectrogram, centre - ripple_deviation, centre + 2 * ripple_deviation)
    runs = _runs(tracked >= centre + ripple_deviation / 2)
    frame_time = hop / adapter_trace.sample_rate
    half_bit = cycles_per_bit / 2 / f_p_nominal

    messages = []
    for first_frame, levels in _segments(runs, frame_time, half_bit):
        t_start = float(spectrogram.times[first_frame]) - frame_time / 2
        bits = bmc_decode(levels, initial_level=Level.Low, strict=False)
        try:
            response = parse_fsk_response(bits)
        except PacketParseError as error:
            logger.debug(f"Switching pattern at t={t_start:.4f} did not parse: {error}")
            continue
        messages.append(RecoveredMessage(Direction.TxToRx, response, 1.0, t_start))
    return messages


def _runs(flags: np.ndarray) -> List[Tuple[bool, int]]:
    runs = []
    for flag in flags:
        if runs and runs[-1][0] == bool(flag):
            runs[-1] = (runs[-1][0], runs[-1][1] + 1)
        else:
            runs.append((bool(flag), 1))
    return runs


def _segments(runs: List[Tuple[bool, int]], frame_time: float,
              half_bit: float) -> List[Tuple[int, List[Level]]]:
    """
    Half-bit levels of each response, with the first frame it starts at. Unmodulated operation longer
    than GAP_HALF_BITS separates two responses; BMC never holds a level for more than two half-bits.
    """
    segments = []
    levels: List[Level] = []
    frame = start = 0
    for level, length in runs:
        count = max(1, int(round(length * frame_time / half_bit)))
        if level and not levels:
            start = frame
        if levels or level:
            levels.extend([Level.High if level else Level.Low] * min(count, GAP_HALF_BITS + 1))
        if not level and count > GAP_HALF_BITS and levels:
            segments.append((start, levels))
            levels = []
        frame += length
    if levels:
        segments.append((start, levels))
    return segments


def synthesize_fsk_ripple(p: SystemParams, response: FskResponse, rate: float = 2e6, noise_sigma: float = None,
                          rng: np.random.Generator = None, delta_f: float = FSK_DEVIATION,
                          idle: float = 5e-3) -> Trace:
    """
    Adapter ripple while the charger sends `response`, with unmodulated operation before and after

    Args:
        p (SystemParams): Circuit parameters, f_p is the unmodulated operating frequency
        response (FskResponse): Charger response
        rate (float): Carrier-domain sample rate. Default: 2 MS/s
        noise_sigma (float): White measurement noise in volts. Default: a tenth of the ripple amplitude
        rng (np.random.Generator): Noise source. Default: seeded with 0
        delta_f (float): FSK deviation in Hz
        idle (float): Unmodulated time before and after the response in seconds

    Returns:
        Trace: Adapter voltage deviation in volts

    """
    schedule = [(p.f_p, idle)] + fsk_modulate(response, p.f_p, delta_f) + [(p.f_p, idle)]
    i_bus_dc, _, _ = bus_current(p, coil_current_amplitude(p))
    ripple = adapter_ripple_schedule(p, i_bus_dc, phase_total(p), schedule, rate)
    if noise_sigma is None:
        noise_sigma = NOISE_FRACTION * float(np.max(np.abs(ripple.samples)))
    if noise_sigma > 0:
        rng = rng or np.random.default_rng(0)
        ripple = ripple.with_samples(ripple.samples + rng.normal(0.0, noise_sigma, len(ripple)))
    return ripple
