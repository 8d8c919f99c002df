import pytest

from pyqiemi.exceptions import ConfigurationError
from pyqiemi.receiver import ThermalBody, thermal_step
from pyqiemi.receiver.receiver_profile import default_phone_thermal


def test_body_starts_at_ambient():
    assert ThermalBody(4.0, 0.178, ambient=70.0).temp == 70.0


def test_zero_power_at_ambient_is_equilibrium():
    body = default_phone_thermal()
    assert thermal_step(body, 0.0, 0.01) == body.ambient


def test_phone_steady_state_at_18_watts():
    assert default_phone_thermal().steady_state(18.0) == pytest.approx(178.1, abs=0.1)


def test_long_integration_reaches_steady_state():
    body = default_phone_thermal()
    for _ in range(30000):
        body = body.at(thermal_step(body, 18.0, 0.01))
    assert body.temp == pytest.approx(body.steady_state(18.0), abs=0.5)


def test_step_conserves_energy():
    body = ThermalBody(4.0, 0.178, temp=100.0)
    new_temp = thermal_step(body, 7.5, 0.02)
    stored = body.heat_capacity * (new_temp - body.temp)
    assert stored == pytest.approx(0.02 * (7.5 - body.dissipation * (body.temp - body.ambient)))


def test_step_moves_towards_steady_state_without_overshoot():
    body = ThermalBody(4.0, 0.178, temp=200.0)
    target = body.steady_state(5.0)
    new_temp = thermal_step(body, 5.0, 0.01)
    assert target < new_temp < body.temp


def test_zero_power_decays_towards_ambient():
    body = ThermalBody(0.3, 0.015, temp=600.0)
    for _ in range(100):
        body = body.at(thermal_step(body, 0.0, 0.1))
    assert body.ambient < body.temp < 600.0


@pytest.mark.parametrize("capacity,dissipation", [(0, 0.1), (1, 0), (-1, 0.1)])
def test_rejects_non_positive_constants(capacity, dissipation):
    with pytest.raises(ConfigurationError):
        ThermalBody(capacity, dissipation)


def test_rejects_non_positive_dt():
    with pytest.raises(ValueError):
        thermal_step(default_phone_thermal(), 1.0, 0.0)


def test_long_step_approaches_steady_state_without_overshoot():
    body = ThermalBody(0.3, 0.015)
    target = body.steady_state(1.0)
    temps = []
    for _ in range(20):
        body = body.at(thermal_step(body, 1.0, 60.0))
        temps.append(body.temp)
    assert all(earlier <= later <= target for earlier, later in zip(temps, temps[1:]))
    assert temps[-1] == pytest.approx(target, abs=0.1)


def test_long_cooling_step_stays_above_ambient():
    body = ThermalBody(4.0, 0.178, temp=300.0)
    new_temp = thermal_step(body, 0.0, 100.0)
    assert body.ambient < new_temp < body.temp
