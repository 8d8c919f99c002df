from dataclasses import dataclass

import numpy as np
from scipy import signal

from pyqiemi.exceptions import TraceTooShort
from pyqiemi.signal.trace import Trace

DEFAULT_WINDOW_SIZE = 4096
DEFAULT_HOP = 1024


@dataclass(frozen=True, eq=False)
class Spectrogram:
    window_size: int
    hop: int
    sample_rate: float
    freq_bins: np.ndarray
    times: np.ndarray
    magnitudes: np.ndarray  # time x frequency

    @property
    def bin_width(self) -> float:
        return self.sample_rate / self.window_size

    def energy(self) -> float:
        """
        Signal energy (sum of squared samples) recovered from the magnitudes by undoing the
        window normalization and the overlap of successive Hann windows.
        """
        window = signal.get_window("hann", self.window_size)
        power = self.magnitudes ** 2
        weights = np.full(power.shape[1], 2.0)
        weights[0] = 1.0
        if self.window_size % 2 == 0:
            weights[-1] = 1.0
        frame_energy = (power * weights).sum(axis=1) * window.sum() ** 2 / self.window_size
        return float(frame_energy.sum() * self.hop / np.sum(window ** 2))


def stft(trace: Trace, window_size: int = DEFAULT_WINDOW_SIZE, hop: int = DEFAULT_HOP) -> Spectrogram:
    """
    Hann-windowed magnitude short-time Fourier transform

    Args:
        trace (Trace): Input trace
        window_size (int): Window length in samples. Default: 4096
        hop (int): Distance between successive windows in samples. Default: 1024

    Returns:
        Spectrogram: Magnitudes with shape (frames, window_size // 2 + 1)

    Raises:
        TraceTooShort: If the trace is shorter than one window
        ValueError: If hop is not in [1, window_size]

    """
    if len(trace) < window_size:
        raise TraceTooShort(len(trace), window_size)
    if not 1 <= hop <= window_size:
        raise ValueError(f"Hop must be between 1 and {window_size}, got {hop}")
    freqs, times, z = signal.stft(trace.samples, fs=trace.sample_rate, window="hann", nperseg=window_size,
                                  noverlap=window_size - hop)
    return Spectrogram(window_size=window_size, hop=hop, sample_rate=trace.sample_rate, freq_bins=freqs,
                       times=trace.t0 + times, magnitudes=np.abs(z).T)


def dominant_frequencies(spec: Spectrogram, f_low: float, f_high: float) -> np.ndarray:
    """
    Per-frame peak frequency inside [f_low, f_high], refined by parabolic interpolation
    of the log magnitude around the peak bin.
    """
    band = np.flatnonzero((spec.freq_bins >= f_low) & (spec.freq_bins <= f_high))
    if len(band) == 0:
        return np.zeros(len(spec.times))
    mags = spec.magnitudes[:, band]
    peaks = np.argmax(mags, axis=1)
    offsets = np.zeros(len(peaks))
    inner = (peaks > 0) & (peaks < len(band) - 1)
    rows = np.flatnonzero(inner)
    if len(rows):
        tiny = np.finfo(float).tiny
        left = np.log(mags[rows, peaks[rows] - 1] + tiny)
        centre = np.log(mags[rows, peaks[rows]] + tiny)
        right = np.log(mags[rows, peaks[rows] + 1] + tiny)
        denominator = left - 2 * centre + right
        safe = np.where(denominator != 0, denominator, 1.0)
        offsets[rows] = np.where(denominator != 0, 0.5 * (left - right) / safe, 0.0)
    return spec.freq_bins[band[peaks]] + offsets * spec.bin_width
