import numpy as np
import pytest

from pyqiemi.circuit import (InterferenceSpec, SystemParams, bus_current, bus_dc_voltage, coil_current_amplitude,
                             inverter_fundamental, max_duty_for_power, phase_total, scaling_factor, tank_impedance,
                             transmitted_power, tx_coil_current)
from pyqiemi.signal import envelope, modulation_depth

CARRIER_RATE = 2e6


@pytest.fixture
def params():
    return SystemParams()


def test_representative_impedance(params):
    z_total = tank_impedance(params)
    assert z_total.real == pytest.approx(3.0595, abs=1e-3)
    assert z_total.imag == pytest.approx(-0.9981, abs=1e-3)


def test_series_resonance_cancels_primary(params):
    omega = 2 * np.pi * params.f_p
    tuned = SystemParams(c_p=1 / (omega ** 2 * (params.l_p - params.mutual)))
    z_rs = 1 / (1j * omega * tuned.c_s) + 1j * omega * (tuned.l_s - tuned.mutual)
    branch = tuned.z_load + z_rs
    z_mutual = 1j * omega * tuned.mutual
    assert tank_impedance(tuned) == pytest.approx(branch * z_mutual / (branch + z_mutual))


def test_decoupled_coils(params):
    decoupled = SystemParams(mutual=1e-15)
    omega = 2 * np.pi * decoupled.f_p
    z_rp = 1 / (1j * omega * decoupled.c_p) + 1j * omega * decoupled.l_p
    assert tank_impedance(decoupled) == pytest.approx(z_rp, abs=1e-6)


def test_phase_is_minus_impedance_angle(params):
    assert phase_total(params) == pytest.approx(0.3155, abs=1e-3)


def test_coil_current_without_interference(params):
    trace = tx_coil_current(params, InterferenceSpec(m_i=0, f_i=1e3), 0.005, CARRIER_RATE)
    result = envelope(trace, params.f_p).samples[1000:-1000]
    assert np.allclose(result, coil_current_amplitude(params), rtol=0.02)


def test_coil_current_depth_law(params):
    trace = tx_coil_current(params, InterferenceSpec(m_i=0.3, f_i=10e3), 0.005, CARRIER_RATE)
    expected = scaling_factor(params, 10e3) * 0.3
    assert modulation_depth(envelope(trace, params.f_p)) == pytest.approx(expected, abs=0.01)


@pytest.mark.parametrize("m_i", [0.1, 0.3, 0.5])
@pytest.mark.parametrize("f_i", [0.5e3, 1e3, 2e3, 5e3, 10e3])
def test_depth_law_grid(params, m_i, f_i):
    trace = tx_coil_current(params, InterferenceSpec(m_i=m_i, f_i=f_i), 0.01, CARRIER_RATE)
    expected = scaling_factor(params, f_i) * m_i
    assert modulation_depth(envelope(trace, params.f_p)) == pytest.approx(expected, abs=0.01)


def test_coil_current_is_linear_in_adapter_voltage(params):
    doubled = params.with_adapter_voltage(2 * params.v_ad)
    assert coil_current_amplitude(doubled) == pytest.approx(2 * coil_current_amplitude(params))


def test_bus_current_in_phase():
    assert bus_current(SystemParams(duty=1.0), np.pi / 2, 0.0)[:2] == pytest.approx((1.0, 1.0))


def test_bus_current_sixty_degrees():
    dc, ac, _ = bus_current(SystemParams(duty=1.0), np.pi / 2, np.radians(60))
    assert dc == pytest.approx(0.5)
    assert ac == pytest.approx(1.0)


def test_bus_current_frequency(params):
    assert bus_current(params, 1.0)[2] == 280e3


def test_bus_current_ac_dc_relation(params):
    dc, ac, _ = bus_current(params, 0.7)
    assert ac * np.cos(phase_total(params)) == pytest.approx(dc)


def test_power_bookkeeping(params):
    i_tx = coil_current_amplitude(params)
    dc, _, _ = bus_current(params, i_tx)
    v_tx = inverter_fundamental(bus_dc_voltage(params), params.duty)
    assert bus_dc_voltage(params) * dc == pytest.approx(0.5 * v_tx * i_tx * np.cos(phase_total(params)), rel=0.01)
    assert transmitted_power(params) == pytest.approx(bus_dc_voltage(params) * dc)


def test_full_duty_power_law(params):
    assert transmitted_power(params.with_duty(1.0)) == pytest.approx(0.22925 * params.v_ad ** 2, rel=1e-3)


def test_max_duty_for_power(params):
    full = params.with_adapter_voltage(9.0)
    duty = max_duty_for_power(full, 5.0)
    assert transmitted_power(full.with_duty(duty)) == pytest.approx(5.0)
    assert max_duty_for_power(params, 100.0) == 1.0
