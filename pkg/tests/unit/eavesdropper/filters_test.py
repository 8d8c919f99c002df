import numpy as np
import pytest

from pyqiemi.circuit import load_change_response
from pyqiemi.eavesdropper import filter_h1, filter_h2
from pyqiemi.signal import Trace, Unit, constant, synth_sine

RATE = 100e3
F_ASK = 2000.0


def test_h1_turns_impulse_into_triangle():
    samples = np.zeros(1001)
    samples[500] = 1.0
    smoothed = filter_h1(Trace(RATE, samples), F_ASK).samples

    support = np.flatnonzero(smoothed > 1e-12)
    assert support[0] == 451
    assert support[-1] == 549
    assert smoothed[500] == pytest.approx(1 / 50)
    assert smoothed.sum() == pytest.approx(1.0)


def test_h1_keeps_dc():
    smoothed = filter_h1(constant(3.0, 0.01, RATE), F_ASK).samples
    assert np.allclose(smoothed[100:-100], 3.0)


def test_h1_turns_load_step_pulse_into_one_signed_bump(system_params):
    current = np.concatenate((np.zeros(500), np.full(500, 0.1)))
    response = load_change_response(system_params, Trace(RATE, current, Unit.Amperes))
    smoothed = filter_h1(response, F_ASK).samples

    assert np.argmin(smoothed) == pytest.approx(500, abs=50)
    assert smoothed.min() < 0
    assert smoothed.max() <= 1e-3 * abs(smoothed.min())


def test_h2_kills_dc():
    shifted = filter_h2(constant(2.0, 0.01, RATE), F_ASK).samples
    assert np.allclose(shifted[25:-25], 0.0)


def test_h2_doubles_sine_at_f_ask():
    shifted = filter_h2(synth_sine(1.0, F_ASK, 0.01, RATE), F_ASK).samples
    assert np.max(np.abs(shifted[25:-25])) == pytest.approx(2.0, abs=1e-3)


def test_h2_cancels_sine_at_twice_f_ask():
    shifted = filter_h2(synth_sine(1.0, 2 * F_ASK, 0.01, RATE), F_ASK).samples
    assert np.max(np.abs(shifted[25:-25])) < 1e-9


@pytest.mark.parametrize("filter_fn", [filter_h1, filter_h2])
def test_filters_are_linear(filter_fn):
    generator = np.random.default_rng(7)
    a, b = generator.normal(size=2000), generator.normal(size=2000)
    combined = filter_fn(Trace(RATE, 2 * a - 3 * b), F_ASK).samples
    separate = 2 * filter_fn(Trace(RATE, a), F_ASK).samples - 3 * filter_fn(Trace(RATE, b), F_ASK).samples
    assert np.allclose(combined, separate)


def test_h2_is_time_invariant():
    samples = np.random.default_rng(3).normal(size=2000)
    shifted_input = np.concatenate((np.zeros(100), samples[:-100]))
    out = filter_h2(Trace(RATE, samples), F_ASK).samples
    out_shifted = filter_h2(Trace(RATE, shifted_input), F_ASK).samples
    assert np.allclose(out_shifted[200:-100], out[100:-200])
