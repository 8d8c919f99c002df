import numpy as np
import pytest

from pyqiemi.exceptions import TraceFormatError
from pyqiemi.signal import Trace, Unit, read_trace, write_trace


def test_round_trip_is_bit_identical(tmp_path):
    rng = np.random.default_rng(11)
    trace = Trace(100e3, rng.normal(size=1000) * 1e-3, Unit.Amperes, t0=0.123456789)
    path = str(tmp_path / "trace.csv")
    write_trace(trace, path)
    loaded = read_trace(path)
    assert np.array_equal(loaded.samples, trace.samples)
    assert loaded.sample_rate == trace.sample_rate
    assert loaded.unit == Unit.Amperes
    assert loaded.t0 == trace.t0


def test_header_line(tmp_path):
    path = tmp_path / "trace.csv"
    write_trace(Trace(2000, [1.5], Unit.Watts, t0=0.5), str(path))
    assert path.read_text().splitlines() == ["# sample_rate=2000 unit=watts t0=0.5", "1.5"]


def test_empty_trace_round_trip(tmp_path):
    path = str(tmp_path / "empty.csv")
    write_trace(Trace(10, []), path)
    assert len(read_trace(path)) == 0


def test_missing_header_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0\n2.0\n")
    with pytest.raises(TraceFormatError):
        read_trace(str(path))


def test_bad_sample_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("# sample_rate=10 unit=volts t0=0\n1.0\nabc\n")
    with pytest.raises(TraceFormatError):
        read_trace(str(path))
