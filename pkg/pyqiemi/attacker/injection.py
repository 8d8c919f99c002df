"""
Voltage waveforms the attacker superimposes on the adapter output, as adapter deviations relative
to V_ad.
"""
import logging
import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Mapping

import numpy as np
from scipy import signal

from pyqiemi.circuit import InterferenceSpec
from pyqiemi.codec import QiPacket, ask_modulate, frame_packet
from pyqiemi.codec.ask import ASK_FREQUENCY
from pyqiemi.exceptions import InvalidAttackPlan, InvalidInterference, VoiceBandExceeded
from pyqiemi.signal import Trace, Unit, read_trace, synth_sine
from pyqiemi.signal.synthesis import sample_count

logger = logging.getLogger(__name__)

FORGE_DEPTH = 0.1
VOICE_DEPTH = 0.3
VOICE_BAND = 10e3
VOICE_BAND_TOLERANCE = 0.01
STEALTHY_LIMIT = 0.35
DISRUPTIVE_LIMIT = 0.5


class Stealth(Enum):
    Stealthy = "stealthy"
    Disruptive = "disruptive"
    HighlyDisruptive = "highly_disruptive"


def classify_stealth(m_i: float) -> Stealth:
    if m_i <= STEALTHY_LIMIT:
        return Stealth.Stealthy
    if m_i <= DISRUPTIVE_LIMIT:
        return Stealth.Disruptive
    return Stealth.HighlyDisruptive


def _check_depth(depth: float) -> None:
    if not 0 <= depth < 1:
        raise InvalidInterference(depth)


def inject_noise(base: Trace, spec: InterferenceSpec) -> Trace:
    """
    Adapter voltage with noise superimposed: v_ad(t) = base(t) * (1 + m_i * w(t))

    Args:
        base (Trace): Clean adapter voltage
        spec (InterferenceSpec): Depth and waveform of the noise, InterferenceSpec enforces m_i < 1

    Returns:
        Trace: The manipulated adapter voltage

    """
    w = spec.normalized_waveform(base.duration, base.sample_rate, base.t0)
    return base.with_samples(base.samples * (1 + spec.m_i * w))


def forge_ask_packet(packet: QiPacket, depth: float = FORGE_DEPTH, rate: float = 100e3,
                     f_ask: float = ASK_FREQUENCY, t0: float = 0.0) -> Trace:
    """
    Interference that makes the charger's coil envelope carry `packet` as if a receiver had
    load-modulated it

    Args:
        packet (QiPacket): Packet to forge
        depth (float): Interference depth of the HIGH level. Default: 0.1
        rate (float): Envelope-domain sample rate. Default: 100 kS/s
        f_ask (float): Bit clock in Hz. Default: 2000
        t0 (float): Time at which the waveform starts

    Returns:
        Trace: Dimensionless adapter deviation

    Raises:
        InvalidInterference: If depth is outside [0, 1)

    """
    _check_depth(depth)
    return ask_modulate(frame_packet(packet), f_ask, depth, rate, t0)


def tone(freq: float, duration: float, rate: float, t0: float = 0.0) -> Trace:
    return synth_sine(1.0, freq, duration, rate, unit=Unit.Dimensionless, t0=t0)


def chirp(f0: float, f1: float, duration: float, rate: float, t0: float = 0.0) -> Trace:
    """Linear sweep from f0 to f1 Hz over `duration` seconds, peak 1."""
    t = np.arange(sample_count(duration, rate)) / rate
    return Trace(rate, signal.chirp(t, f0, duration, f1, method="linear"), Unit.Dimensionless, t0)


def voice_band_fraction(audio: Trace, limit: float = VOICE_BAND) -> float:
    """Share of the signal energy above `limit` Hz."""
    spectrum = np.abs(np.fft.rfft(audio.samples - np.mean(audio.samples))) ** 2
    total = float(spectrum.sum())
    if total == 0:
        return 0.0
    freqs = np.fft.rfftfreq(len(audio), d=1 / audio.sample_rate)
    return float(spectrum[freqs > limit].sum()) / total


def inject_voice(audio: Trace, depth: float = VOICE_DEPTH) -> Trace:
    """
    Voice command as interference: the audio normalized to peak 1 and scaled by `depth`

    Args:
        audio (Trace): Voice waveform, band-limited to 10 kHz
        depth (float): Interference depth. Default: 0.3

    Returns:
        Trace: Dimensionless adapter deviation

    Raises:
        InvalidInterference: If depth is outside [0, 1)
        VoiceBandExceeded: If more than 1% of the audio energy lies above 10 kHz

    """
    _check_depth(depth)
    fraction = voice_band_fraction(audio)
    if fraction > VOICE_BAND_TOLERANCE:
        raise VoiceBandExceeded(fraction, VOICE_BAND)
    peak = float(np.max(np.abs(audio.samples))) if len(audio) else 0.0
    scale = depth / peak if peak > 0 else 0.0
    return Trace(audio.sample_rate, audio.samples * scale, Unit.Dimensionless, audio.t0)


def voice_material(params: Mapping[str, Any], rate: float, t0: float = 0.0) -> Trace:
    """
    Audio described by attack parameters: `tone` (Hz), `chirp` ([f0, f1] Hz) or `file` (trace CSV),
    lasting `duration` seconds for the synthetic kinds
    """
    duration = float(params.get("duration", 1.0))
    if "tone" in params:
        return tone(float(params["tone"]), duration, rate, t0)
    if "chirp" in params:
        f0, f1 = params["chirp"]
        return chirp(float(f0), float(f1), duration, rate, t0)
    if "file" in params:
        audio = read_trace(params["file"])
        return Trace(audio.sample_rate, audio.samples, Unit.Dimensionless, t0)
    raise InvalidAttackPlan(f"Voice action needs a tone, chirp or file, got {sorted(params)}")


class InterferenceSource(ABC):
    """Adapter deviation over a time span, rendered block by block."""
    start: float = 0.0
    stop: float = math.inf

    @abstractmethod
    def render(self, t0: float, count: int, rate: float) -> np.ndarray:
        raise NotImplementedError()


class WaveformSource(InterferenceSource):
    def __init__(self, waveform: Trace):
        self.waveform = waveform
        self.start = waveform.t0
        self.stop = waveform.t0 + waveform.duration

    def render(self, t0: float, count: int, rate: float) -> np.ndarray:
        waveform = self.waveform
        if waveform.sample_rate == rate:
            out = np.zeros(count)
            offset = int(round((t0 - waveform.t0) * rate))
            low, high = max(offset, 0), min(offset + count, len(waveform))
            if low < high:
                out[low - offset:high - offset] = waveform.samples[low:high]
            return out
        t = t0 + np.arange(count) / rate
        return np.interp(t, waveform.times(), waveform.samples, left=0.0, right=0.0)

    def __repr__(self) -> str:
        return str({"start": self.start, "stop": self.stop, "samples": len(self.waveform)})


class NoiseSource(InterferenceSource):
    def __init__(self, spec: InterferenceSpec, start: float = 0.0, stop: float = math.inf):
        self.spec = spec
        self.start = start
        self.stop = stop

    def render(self, t0: float, count: int, rate: float) -> np.ndarray:
        t = t0 + np.arange(count) / rate
        w = self.spec.normalized_waveform(count / rate, rate, t0)
        return np.where((t >= self.start) & (t < self.stop), self.spec.m_i * w, 0.0)

    def __repr__(self) -> str:
        return str({"m_i": self.spec.m_i, "f_i": self.spec.f_i, "start": self.start, "stop": self.stop})
