import numpy as np
import pytest

from pyqiemi.exceptions import InvalidTrace
from pyqiemi.signal import Trace, Unit


def test_duration_is_length_over_rate():
    trace = Trace(1000, np.zeros(250))
    assert trace.duration == pytest.approx(0.25)


def test_samples_are_read_only():
    trace = Trace(1000, [1.0, 2.0])
    with pytest.raises(ValueError):
        trace.samples[0] = 5.0


def test_non_positive_rate_rejected():
    with pytest.raises(InvalidTrace):
        Trace(0, [1.0])


def test_non_finite_sample_rejected():
    with pytest.raises(InvalidTrace):
        Trace(1000, [1.0, np.nan])


def test_unit_accepts_tag():
    assert Trace(10, [0.0], "fahrenheit").unit == Unit.Fahrenheit


def test_slice_keeps_time_axis():
    trace = Trace(1000, np.arange(100.0), t0=1.0)
    part = trace.slice(1.01, 1.02)
    assert len(part) == 10
    assert part.t0 == pytest.approx(1.01)
    assert part.samples[0] == 10.0


def test_times():
    trace = Trace(4, [0.0] * 4, t0=2.0)
    assert list(trace.times()) == [2.0, 2.25, 2.5, 2.75]
