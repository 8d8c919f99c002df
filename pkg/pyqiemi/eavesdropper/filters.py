import numpy as np
from scipy import signal

from pyqiemi.signal import Trace


def triangle_kernel(rate: float, f_ask: float) -> np.ndarray:
    half_width = max(1, int(round(rate / f_ask)))
    taus = np.arange(-half_width, half_width + 1) / rate
    kernel = np.clip(1 - f_ask * np.abs(taus), 0.0, None)
    return kernel / kernel.sum()


def filter_h1(trace: Trace, f_ask: float) -> Trace:
    """
    Triangle smoothing: convolution with h1(tau) = 1 - f_ask * |tau| on [-1/f_ask, 1/f_ask],
    normalized to unit area.

    Args:
        trace (Trace): Adapter- or envelope-domain trace
        f_ask (float): Sets the half-width 1/f_ask of the triangle

    Returns:
        Trace: Smoothed trace, same length and time base

    """
    if f_ask <= 0:
        raise ValueError(f"f_ask must be positive, got {f_ask}")
    if len(trace) == 0:
        return trace
    smoothed = signal.fftconvolve(trace.samples, triangle_kernel(trace.sample_rate, f_ask), mode="same")
    return trace.with_samples(smoothed)


def filter_h2(trace: Trace, f_ask: float) -> Trace:
    """
    y(t) = x(t - 1/(2 f_ask)) - x(t + 1/(2 f_ask)). Samples shifted in from outside the trace are zero.
    """
    if f_ask <= 0:
        raise ValueError(f"f_ask must be positive, got {f_ask}")
    shift = int(round(trace.sample_rate / (2 * f_ask)))
    samples = trace.samples
    padded = np.concatenate((np.zeros(shift), samples, np.zeros(shift)))
    return trace.with_samples(padded[:len(samples)] - padded[2 * shift:2 * shift + len(samples)])
