import numpy as np
import pytest

from pyqiemi.codec import ask_demodulate, ask_modulate, frame_packet, parse_packet
from pyqiemi.exceptions import DemodulationFailure
from pyqiemi.signal import Trace
from tests.unit.utils.random_utils import every_kind_of_packet

RATE = 100e3
DEPTH = 0.05


def on_idle_carrier(modulation: Trace, noise: np.ndarray = None) -> Trace:
    samples = 1 + np.concatenate([np.zeros(100), modulation.samples, np.zeros(100)])
    if noise is not None:
        samples = samples + noise[:len(samples)]
    return Trace(RATE, samples)


def test_empty_bitstream():
    assert len(ask_modulate([], depth=DEPTH, rate=RATE)) == 0


def test_single_one_bit():
    trace = ask_modulate([1], f_ask=2000, depth=DEPTH, rate=RATE)
    assert trace.duration == pytest.approx(500e-6)
    assert np.all(trace.samples[:25] == DEPTH)
    assert np.all(trace.samples[25:] == 0)


def test_low_rate_rejected():
    with pytest.raises(ValueError):
        ask_modulate([1], f_ask=2000, rate=30e3)


@pytest.mark.parametrize("packet", every_kind_of_packet())
def test_clean_loopback(packet):
    envelope = on_idle_carrier(ask_modulate(frame_packet(packet), depth=DEPTH, rate=RATE))
    assert parse_packet(ask_demodulate(envelope), allow_trailing=True) == packet


def test_loopback_is_scale_and_offset_free():
    packet = every_kind_of_packet()[0]
    envelope = on_idle_carrier(ask_modulate(frame_packet(packet), depth=DEPTH, rate=RATE))
    scaled = envelope.with_samples(3.7 * envelope.samples + 12)
    assert parse_packet(ask_demodulate(scaled), allow_trailing=True) == packet


def test_zero_modulation_fails():
    with pytest.raises(DemodulationFailure):
        ask_demodulate(Trace(RATE, np.ones(2000)))


def test_modulation_below_noise_floor_fails():
    rng = np.random.default_rng(9)
    modulation = ask_modulate(frame_packet(every_kind_of_packet()[0]), depth=0.001, rate=RATE)
    envelope = on_idle_carrier(modulation, rng.normal(0, 0.002, 10000))
    with pytest.raises(DemodulationFailure):
        ask_demodulate(envelope)


def test_loopback_with_noise():
    rng = np.random.default_rng(10)
    packets = every_kind_of_packet()
    successes = 0
    for trial in range(100):
        packet = packets[trial % len(packets)]
        modulation = ask_modulate(frame_packet(packet), depth=DEPTH, rate=RATE)
        envelope = on_idle_carrier(modulation, rng.normal(0, DEPTH / 10, len(modulation) + 200))
        try:
            successes += parse_packet(ask_demodulate(envelope), allow_trailing=True) == packet
        except Exception:
            pass
    assert successes >= 99
