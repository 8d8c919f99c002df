import numpy as np
import pytest

from pyqiemi.circuit import inverter_fundamental, inverter_staircase
from pyqiemi.exceptions import InvalidSystemParams

F_P = 140e3


def test_full_duty_is_square_wave():
    rate = 1000 * F_P
    trace = inverter_staircase(1.0, 1.0, F_P, 1 / F_P, rate, t0=0.5 / rate)
    assert set(np.unique(trace.samples)) == {-1.0, 1.0}


def test_zero_duty_is_zero():
    assert not np.any(inverter_staircase(12.0, 0.0, F_P, 1e-4, 100 * F_P).samples)


def test_quarter_period_is_positive_pulse_centre():
    rate = 40 * F_P
    assert inverter_staircase(12.0, 0.5, F_P, 1 / F_P, rate).samples[10] == 12.0


def test_low_rate_rejected():
    with pytest.raises(InvalidSystemParams):
        inverter_staircase(1.0, 0.5, F_P, 1e-4, 5 * F_P)


def test_fundamental_closed_form():
    assert inverter_fundamental(1.0, 1.0) == pytest.approx(4 / np.pi)
    assert inverter_fundamental(1.0, 0.0) == 0
    assert inverter_fundamental(12.0, 0.5) == pytest.approx(10.804, abs=0.01)


@pytest.mark.parametrize("duty", [0.2, 0.5, 0.8, 1.0])
def test_fundamental_matches_fft_of_staircase(duty):
    rate = 1000 * F_P
    periods = 4
    trace = inverter_staircase(12.0, duty, F_P, periods / F_P, rate, t0=0.5 / rate)
    spectrum = np.fft.rfft(trace.samples)
    fundamental = 2 * np.abs(spectrum[periods]) / len(trace)
    assert fundamental == pytest.approx(inverter_fundamental(12.0, duty), rel=0.005)
