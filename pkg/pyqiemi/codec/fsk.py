from typing import List, Tuple

from pyqiemi.codec.bmc import Level, bmc_encode
from pyqiemi.codec.framing import frame_packet
from pyqiemi.codec.packet import FskKind, FskResponse

FSK_DEVIATION = 1000.0
CYCLES_PER_BIT = 512
PATTERN_BITS = 8


def response_bits(response: FskResponse) -> List[int]:
    if response.kind == FskKind.ACK:
        return [1] * PATTERN_BITS
    if response.kind == FskKind.NAK:
        return [0] * PATTERN_BITS
    if response.kind == FskKind.DATA:
        return frame_packet(response.packet)
    return []


def fsk_levels(response: FskResponse) -> List[Level]:
    return bmc_encode(response_bits(response), initial_level=Level.Low)


def fsk_modulate(response: FskResponse, f_p: float, delta_f: float = FSK_DEVIATION,
                 cycles_per_bit: int = CYCLES_PER_BIT) -> List[Tuple[float, float]]:
    """
    Frequency schedule of a transmitter response: BMC half-bits with LOW at f_p and HIGH at f_p + delta_f,
    each lasting cycles_per_bit / 2 cycles of f_p. ND has an empty schedule.

    Returns:
        List[Tuple[float, float]]: (frequency in Hz, duration in seconds) per half-bit

    """
    if delta_f <= 0:
        raise ValueError(f"Frequency deviation must be positive, got {delta_f}")
    half_bit = cycles_per_bit / 2 / f_p
    return [(f_p + delta_f if level == Level.High else f_p, half_bit) for level in fsk_levels(response)]
