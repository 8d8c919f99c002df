import logging

import numpy as np

from pyqiemi.circuit import BusMonitorMode, BusNoiseMonitor, attenuation_db, countermeasure_filter
from pyqiemi.signal import Trace, synth_sine

RATE = 100e3


def test_dc_passes_unchanged():
    trace = Trace(RATE, np.full(1000, 4.892))
    assert np.allclose(countermeasure_filter(trace, 90).samples, 4.892)


def test_attenuation_at_500_hz():
    assert attenuation_db(90, 500) >= 15


def test_attenuation_is_monotone():
    attenuation = [attenuation_db(90, f) for f in (500, 1e3, 2e3, 5e3, 10e3)]
    assert all(a < b for a, b in zip(attenuation, attenuation[1:]))


def test_high_tone_attenuated_more():
    low = countermeasure_filter(synth_sine(1.0, 1e3, 0.05, RATE), 90).samples[2500:]
    high = countermeasure_filter(synth_sine(1.0, 10e3, 0.05, RATE), 90).samples[2500:]
    assert np.std(high) < np.std(low)


def test_monitor_off_never_alarms():
    monitor = BusNoiseMonitor(BusMonitorMode.Off)
    assert not monitor.observe(0.3 * np.sin(np.linspace(0, 20, 1000)))
    assert monitor.alarms == 0


def test_monitor_quiet_bus():
    monitor = BusNoiseMonitor(BusMonitorMode.Shutdown)
    assert not monitor.observe(np.full(1000, 0.01))


def test_monitor_alarm_does_not_shut_down(caplog):
    monitor = BusNoiseMonitor(BusMonitorMode.Alarm)
    with caplog.at_level(logging.WARNING, logger="pyqiemi.circuit.countermeasure"):
        assert not monitor.observe(0.3 * np.sin(np.linspace(0, 20, 1000)))
    assert monitor.alarms == 1
    assert "Bus noise" in caplog.text


def test_monitor_shutdown():
    monitor = BusNoiseMonitor("shutdown")
    assert monitor.observe(0.3 * np.sin(np.linspace(0, 20, 1000)))
