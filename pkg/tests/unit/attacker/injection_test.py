import numpy as np
import pytest

from pyqiemi.attacker import (NoiseSource, Stealth, WaveformSource, chirp, classify_stealth, forge_ask_packet,
                              inject_noise, inject_voice, tone, voice_band_fraction, voice_material)
from pyqiemi.circuit import InterferenceSpec
from pyqiemi.codec import QiPacket, ask_demodulate, parse_packet
from pyqiemi.exceptions import InvalidAttackPlan, InvalidInterference, VoiceBandExceeded
from pyqiemi.signal import Trace, Unit, synth_sine, write_trace

RATE = 100e3


def flat_adapter(v_ad: float = 5.0, duration: float = 0.01) -> Trace:
    return Trace(RATE, np.full(int(duration * RATE), v_ad))


def test_zero_depth_leaves_adapter_untouched():
    base = flat_adapter()
    manipulated = inject_noise(base, InterferenceSpec(0.0, 1000.0))
    assert np.array_equal(manipulated.samples, base.samples)


def test_sine_noise_peak_follows_depth():
    manipulated = inject_noise(flat_adapter(), InterferenceSpec(0.3, 1000.0))
    assert np.max(manipulated.samples) == pytest.approx(5.0 * 1.3, rel=1e-3)
    assert np.min(manipulated.samples) == pytest.approx(5.0 * 0.7, rel=1e-3)


def test_forged_packet_demodulates_as_the_packet():
    packet = QiPacket.ce(127)
    forged = forge_ask_packet(packet, depth=0.1)
    envelope = Trace(RATE, 1 + np.concatenate([np.zeros(100), forged.samples, np.zeros(100)]))

    assert forged.unit == Unit.Dimensionless
    assert np.max(forged.samples) == pytest.approx(0.1)
    assert parse_packet(ask_demodulate(envelope), allow_trailing=True) == packet


def test_forged_packet_starts_at_t0():
    assert forge_ask_packet(QiPacket.ce(0), t0=1.25).t0 == 1.25


@pytest.mark.parametrize("depth", [-0.1, 1.0])
def test_forge_depth_checked(depth):
    with pytest.raises(InvalidInterference):
        forge_ask_packet(QiPacket.ce(0), depth=depth)


def test_voice_is_scaled_to_depth():
    audio = synth_sine(2.5, 440.0, 0.1, RATE)
    injected = inject_voice(audio, depth=0.3)

    assert np.max(np.abs(injected.samples)) == pytest.approx(0.3)
    assert injected.unit == Unit.Dimensionless


def test_voice_above_band_rejected():
    with pytest.raises(VoiceBandExceeded) as error:
        inject_voice(tone(15e3, 0.05, RATE))
    assert error.value.fraction > 0.9


def test_voice_band_fraction_of_a_low_tone_is_negligible():
    assert voice_band_fraction(tone(1000.0, 0.1, RATE)) < 0.01


def test_chirp_sweeps_between_its_ends():
    sweep = chirp(100.0, 4000.0, 0.5, RATE)
    spectrum = np.abs(np.fft.rfft(sweep.samples)) ** 2
    freqs = np.fft.rfftfreq(len(sweep), 1 / RATE)
    in_band = spectrum[(freqs >= 100) & (freqs <= 4000)].sum()
    assert in_band / spectrum.sum() > 0.9


def test_voice_material_from_file(tmp_path):
    path = str(tmp_path / "voice.csv")
    write_trace(synth_sine(1.0, 300.0, 0.02, RATE), path)
    audio = voice_material({"file": path}, RATE, t0=2.0)
    assert audio.t0 == 2.0
    assert len(audio) == 2000


def test_voice_material_needs_a_source():
    with pytest.raises(InvalidAttackPlan):
        voice_material({"duration": 1.0}, RATE)


@pytest.mark.parametrize("m_i,stealth", [
    (0.1, Stealth.Stealthy),
    (0.35, Stealth.Stealthy),
    (0.4, Stealth.Disruptive),
    (0.6, Stealth.HighlyDisruptive),
])
def test_stealth_classes(m_i, stealth):
    assert classify_stealth(m_i) == stealth


def test_waveform_source_renders_in_blocks():
    waveform = Trace(RATE, np.arange(10, dtype=float) + 1, Unit.Dimensionless, t0=0.0001)
    source = WaveformSource(waveform)

    block = source.render(0.0, 20, RATE)

    assert np.all(block[:10] == 0)
    assert np.array_equal(block[10:20], waveform.samples)


def test_noise_source_is_gated():
    source = NoiseSource(InterferenceSpec(0.2, 1000.0), start=0.001, stop=0.002)
    block = source.render(0.0, 300, RATE)
    assert np.all(block[:100] == 0)
    assert np.all(block[200:] == 0)
    assert np.max(np.abs(block[100:200])) > 0.1
