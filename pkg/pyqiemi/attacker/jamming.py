import logging
import math
from typing import List, Tuple

import numpy as np

from pyqiemi.attacker.injection import InterferenceSource
from pyqiemi.codec.ask import ASK_FREQUENCY
from pyqiemi.exceptions import InvalidInterference
from pyqiemi.signal import Trace, Unit
from pyqiemi.signal.synthesis import sample_count

logger = logging.getLogger(__name__)

JAM_DEPTH = 0.2
JAM_GUARD = 2e-3


class JamSource(InterferenceSource):
    def __init__(self, start: float, stop: float, depth: float = JAM_DEPTH, seed: int = 0,
                 f_ask: float = ASK_FREQUENCY, guard: float = JAM_GUARD):
        """
        Pseudo-random binary phase bursts at the ASK bit clock: every bit slot carries one period of a
        square wave whose sign is drawn from a generator seeded with `seed`

        Args:
            start (float): First jammed instant in seconds
            stop (float): End of jamming in seconds, must be finite
            depth (float): Interference depth of the bursts. Default: 0.2
            seed (int): Seed of the slot signs
            f_ask (float): ASK bit clock in Hz. Default: 2000
            guard (float): Silence kept around excluded windows in seconds. Default: 2 ms

        Raises:
            InvalidInterference: If depth is outside [0, 1)
            ValueError: If stop is not finite or before start
        """
        if not 0 <= depth < 1:
            raise InvalidInterference(depth)
        if not math.isfinite(stop) or stop < start:
            raise ValueError(f"Jamming needs a finite stop after {start}, got {stop}")
        self.start = start
        self.stop = stop
        self.depth = depth
        self.f_ask = f_ask
        self.guard = guard
        slots = int(math.ceil((stop - start) * f_ask)) + 1
        self.signs = np.random.default_rng(seed).choice([-1.0, 1.0], slots)
        self.gaps: List[Tuple[float, float]] = []

    def exclude(self, t_start: float, t_stop: float) -> None:
        """Keep quiet during [t_start - guard, t_stop + guard)."""
        self.gaps.append((t_start - self.guard, t_stop + self.guard))

    def render(self, t0: float, count: int, rate: float) -> np.ndarray:
        t = t0 + np.arange(count) / rate
        active = (t >= self.start) & (t < self.stop)
        for gap_start, gap_stop in self.gaps:
            active &= (t < gap_start) | (t >= gap_stop)
        out = np.zeros(count)
        if not np.any(active):
            return out
        phase = (t[active] - self.start) * self.f_ask
        slot = np.minimum(np.floor(phase).astype(int), len(self.signs) - 1)
        square = np.where(phase - np.floor(phase) < 0.5, 1.0, -1.0)
        out[active] = self.depth * square * self.signs[slot]
        return out

    def prune(self, before: float) -> None:
        self.gaps = [gap for gap in self.gaps if gap[1] >= before]

    def __repr__(self) -> str:
        return str({"start": self.start, "stop": self.stop, "depth": self.depth, "gaps": len(self.gaps)})


def jam_ask(duration: float, depth: float = JAM_DEPTH, seed: int = 0, rate: float = 100e3,
            f_ask: float = ASK_FREQUENCY, t0: float = 0.0) -> Trace:
    """
    Jamming interference covering [t0, t0 + duration)

    Returns:
        Trace: Dimensionless adapter deviation

    """
    source = JamSource(t0, t0 + duration, depth, seed, f_ask)
    return Trace(rate, source.render(t0, sample_count(duration, rate), rate), Unit.Dimensionless, t0)
