import numpy as np
import pytest

from pyqiemi.exceptions import EnvelopeBandwidthError
from pyqiemi.signal import Trace, envelope, envelope_bandwidth, modulation_depth, synth_sine

RATE = 2e6
CARRIER = 140e3


def am_signal(depth: float, f_i: float, duration: float = 0.005) -> Trace:
    carrier = synth_sine(1.0, CARRIER, duration, RATE)
    t = carrier.times()
    return carrier.with_samples((1 + depth * np.sin(2 * np.pi * f_i * t)) * carrier.samples)


def test_constant_envelope():
    result = envelope(synth_sine(2.0, CARRIER, 0.005, RATE), CARRIER)
    interior = result.samples[1000:-1000]
    assert np.allclose(interior, 2.0, rtol=0.02)
    assert result.sample_rate == RATE


def test_am_depth_recovered():
    assert modulation_depth(envelope(am_signal(0.3, 1e3), CARRIER)) == pytest.approx(0.30, abs=0.02)


@pytest.mark.parametrize("depth", [0.05, 0.2, 0.5])
@pytest.mark.parametrize("f_i", [1e3, 7e3])
def test_depth_law_over_range(depth, f_i):
    assert modulation_depth(envelope(am_signal(depth, f_i), CARRIER)) == pytest.approx(depth, abs=0.02)


def test_zero_envelope():
    assert not np.any(envelope(Trace(RATE, np.zeros(5000)), CARRIER).samples)


def test_undersampled_carrier_rejected():
    with pytest.raises(EnvelopeBandwidthError):
        envelope(Trace(100e3, np.zeros(100)), CARRIER)


def test_bandwidth_ratio_rejected():
    with pytest.raises(EnvelopeBandwidthError):
        envelope(am_signal(0.3, 1e3), CARRIER, bandwidth=20e3)


def test_bandwidth_ratio_checked_without_explicit_bandwidth():
    with pytest.raises(EnvelopeBandwidthError) as error:
        envelope(am_signal(0.3, 20e3), CARRIER)
    assert error.value.bandwidth == pytest.approx(20e3, abs=1e3)


def test_measured_bandwidth_of_am_envelope():
    assert envelope_bandwidth(envelope(am_signal(0.3, 1e3), CARRIER)) == pytest.approx(1e3, abs=300)


def test_steady_envelope_has_no_bandwidth():
    assert envelope_bandwidth(envelope(synth_sine(2.0, CARRIER, 0.005, RATE), CARRIER)) == 0.0
    assert envelope_bandwidth(Trace(RATE, np.zeros(5000))) == 0.0
