from enum import IntEnum
from typing import List, Optional, Sequence

from pyqiemi.exceptions import BmcDecodeError


class Level(IntEnum):
    Low = 0
    High = 1


def bmc_encode(bits: Sequence[int], f_clk: float = 2000.0, initial_level: Level = Level.High) -> List[Level]:
    """
    Biphase mark coding: the level toggles at every bit boundary and once more mid-bit for a ONE

    Args:
        bits (Sequence[int]): Bits to encode
        f_clk (float): Bit clock in Hz, two half-bits per clock period
        initial_level (Level): Line level before the first bit

    Returns:
        List[Level]: Two half-bit levels per bit

    """
    if f_clk <= 0:
        raise ValueError(f"Bit clock must be positive, got {f_clk}")
    level = Level(initial_level)
    levels = []
    for bit in bits:
        level = Level(1 - level)
        levels.append(level)
        if bit:
            level = Level(1 - level)
        levels.append(level)
    return levels


def bmc_decode(levels: Sequence[int], f_clk: float = 2000.0, initial_level: Optional[Level] = None,
               strict: bool = True) -> List[int]:
    """
    Inverse of bmc_encode. Works for either initial level; when `initial_level` is given the first
    boundary transition is checked against it too. A trailing odd half-bit is ignored.

    Args:
        levels (Sequence[int]): Half-bit levels
        f_clk (float): Bit clock in Hz
        initial_level (Level): Line level before the first bit, if known
        strict (bool): Raise on a missing boundary transition instead of truncating there. Default: True

    Returns:
        List[int]: Decoded bits

    Raises:
        BmcDecodeError: If strict and a bit boundary has no transition

    """
    if f_clk <= 0:
        raise ValueError(f"Bit clock must be positive, got {f_clk}")
    bits = []
    previous = None if initial_level is None else int(initial_level)
    for index in range(len(levels) // 2):
        first, second = int(levels[2 * index]), int(levels[2 * index + 1])
        if previous is not None and first == previous:
            if strict:
                raise BmcDecodeError(index)
            break
        bits.append(int(first != second))
        previous = second
    return bits
