import numpy as np
import pytest

from pyqiemi.circuit import (InterferenceSpec, SystemParams, adapter_ripple, adapter_ripple_schedule, bus_dc_voltage,
                             bus_voltage, load_change_response, propagate_interference, scaling_factor)
from pyqiemi.circuit.adapter import SETTLE_TAU, load_change_kernel
from pyqiemi.exceptions import DegenerateCircuit
from pyqiemi.signal import Trace, Unit, modulation_depth

RATE = 100e3


@pytest.fixture
def params():
    return SystemParams()


@pytest.mark.parametrize("f_i,expected", [(1e3, 0.99), (10e3, 0.95), (100e3, 0.30)])
def test_scaling_factor_anchors(params, f_i, expected):
    assert scaling_factor(params, f_i) == pytest.approx(expected, abs=0.02)


def test_scaling_factor_dc_limit(params):
    assert scaling_factor(params, 0) == pytest.approx(5.1 / 5.11)


def test_scaling_factor_monotone_and_bounded(params):
    k = scaling_factor(params, np.linspace(0, 1e6, 1001))
    assert np.all(np.diff(k) <= 0)
    assert np.all((k > 0) & (k <= 1))


def test_bus_dc_voltage(params):
    assert bus_dc_voltage(params) == pytest.approx(4.892, abs=1e-3)


def test_bus_voltage_without_interference(params):
    trace = bus_voltage(params, InterferenceSpec(m_i=0, f_i=1e3), 0.01, RATE)
    assert np.allclose(trace.samples, bus_dc_voltage(params))
    assert trace.unit == Unit.Volts


def test_bus_voltage_ripple_depth(params):
    trace = bus_voltage(params, InterferenceSpec(m_i=0.3, f_i=1e3), 0.01, RATE)
    assert modulation_depth(trace, trim=0) == pytest.approx(0.297, abs=0.005)


def test_arbitrary_waveform_uses_per_component_scaling(params):
    tone = InterferenceSpec(m_i=0.3, f_i=10e3).normalized_waveform(0.01, RATE)
    arbitrary = InterferenceSpec(m_i=0.3, waveform=Trace(RATE, tone))
    trace = bus_voltage(params, arbitrary, 0.01, RATE)
    assert modulation_depth(trace, trim=0) == pytest.approx(0.3 * scaling_factor(params, 10e3), abs=0.005)


def test_propagate_zero_is_zero(params):
    assert not np.any(propagate_interference(params, np.zeros(64), RATE))


def test_ripple_vanishes_for_ideal_source():
    trace = adapter_ripple(SystemParams(z_ad=0), 1.0, np.radians(70), 1e-4, 28e6)
    assert not np.any(trace.samples)


def test_ripple_amplitude_oracle(params):
    trace = adapter_ripple(params, 1.0, np.radians(70), 1e-4, 28e6)
    assert np.max(np.abs(trace.samples)) == pytest.approx(3.0057e-3, rel=2e-3)


def test_ripple_is_linear_in_bus_current(params):
    single = adapter_ripple(params, 1.0, 0.3, 1e-4, 28e6)
    double = adapter_ripple(params, 2.0, 0.3, 1e-4, 28e6)
    assert np.allclose(double.samples, 2 * single.samples)


def test_ripple_degenerate_phase(params):
    with pytest.raises(DegenerateCircuit):
        adapter_ripple(params, 1.0, np.pi / 2, 1e-4, 28e6)


def test_ripple_schedule_length(params):
    trace = adapter_ripple_schedule(params, 1.0, 0.3, [(140e3, 1e-3), (141e3, 2e-3)], 2e6)
    assert len(trace) == 6000


def test_zero_step_gives_zero_response(params):
    assert not np.any(load_change_response(params, Trace(RATE, np.zeros(500), Unit.Amperes)).samples)


def test_unit_step_pulse(params):
    step = np.zeros(1000)
    step[100:] = 1.0
    response = load_change_response(params, Trace(RATE, step, Unit.Amperes)).samples
    tau_samples = round(SETTLE_TAU * RATE)
    assert response[99] == pytest.approx(0, abs=1e-15)
    assert response[100] == pytest.approx(-params.z_ad)
    assert response[100 + tau_samples] == pytest.approx(-params.z_ad / np.e)
    assert np.allclose(response[400:], 0, atol=1e-15)


def test_step_response_matches_convolution_oracle(params):
    rng = np.random.default_rng(5)
    current = np.repeat(rng.integers(0, 2, 20).astype(float), 50)
    response = load_change_response(params, Trace(RATE, current, Unit.Amperes)).samples
    oracle = np.convolve(current - current[0], load_change_kernel(params, RATE))[:len(current)]
    assert np.allclose(response, oracle, atol=1e-15)


def test_opposite_steps_give_opposite_pulses(params):
    current = np.zeros(1000)
    current[100:500] = 0.5
    response = load_change_response(params, Trace(RATE, current, Unit.Amperes)).samples
    assert response[100] < 0
    assert response[500] > 0
    assert response[100] == pytest.approx(-response[500])
