from dataclasses import replace

import numpy as np
import pytest

from pyqiemi.attacker import NoiseSource
from pyqiemi.channel import InBandLink
from pyqiemi.charger.charger_action import SILENCE, EventKind
from pyqiemi.circuit import InterferenceSpec
from pyqiemi.codec import ACK, QiPacket

TICK = 1000


@pytest.fixture
def link(charger):
    return InBandLink(charger.params, charger.profile, seed=1)


def run(link, ticks, amplitude=1.0):
    rendered = [link.render(TICK, amplitude) for _ in range(ticks)]
    link.complete_windows()
    return rendered


def test_receiver_packet_reaches_the_demodulator(link):
    run(link, 1)
    link.send_rx([QiPacket.sig(0x84)], depth=0.05)
    run(link, 4)

    assert link.next_event().packet == QiPacket.sig(0x84)
    assert link.receptions[0].intact
    assert not link.stability_trips


def test_queued_packets_arrive_in_order(link):
    run(link, 1)
    packets = [QiPacket.sig(0x84), QiPacket.identification(0x12, 0x4C, 0xA1B2C3), QiPacket.cfg(True, 10)]
    link.send_rx(packets, depth=0.05)
    run(link, 20)

    assert [link.next_event().packet for _ in packets] == packets
    assert link.next_event() == SILENCE


def test_forged_packet_reaches_the_demodulator(link):
    run(link, 1)
    link.forge(QiPacket.ce(127), depth=0.1, earliest=link.now)
    run(link, 4)

    assert link.next_event().packet == QiPacket.ce(127)


def test_forged_packets_are_spaced(link):
    _, first_stop = link.forge(QiPacket.ce(0), 0.1, earliest=0.0)
    second_start, _ = link.forge(QiPacket.ce(0), 0.1, earliest=0.0)
    assert second_start == pytest.approx(first_stop + 2e-3)


def test_nothing_is_demodulated_without_carrier(link):
    run(link, 1, amplitude=0.0)
    link.forge(QiPacket.ce(127), depth=0.1, earliest=link.now)
    run(link, 5, amplitude=0.0)

    assert link.next_event() == SILENCE
    assert not link.receptions


def test_weak_noise_keeps_the_inverter_running(link):
    link.add_source(NoiseSource(InterferenceSpec(0.2, 1000.0)))
    rendered = run(link, 3)
    assert not any(tick.browned_out for tick in rendered)
    assert rendered[-1].power_factor == 1.0


def test_deep_noise_browns_the_inverter_out(link):
    link.add_source(NoiseSource(InterferenceSpec(0.45, 1000.0)))
    rendered = run(link, 3)
    assert rendered[-1].browned_out
    assert np.min(np.abs(rendered[-1].envelope)) < 0.01
    assert rendered[-1].power_factor < 1.0


def test_countermeasure_filters_injected_noise(charger):
    profile = replace(charger.profile, countermeasure=True)
    link = InBandLink(charger.params, profile, seed=1)
    link.add_source(NoiseSource(InterferenceSpec(0.45, 1000.0)))

    rendered = run(link, 10)

    assert not rendered[-1].browned_out
    assert np.max(np.abs(rendered[-1].bus_deviation)) < 0.05


def test_interference_corrupting_a_receiver_packet_counts_as_a_trip(link):
    run(link, 1)
    link.add_source(NoiseSource(InterferenceSpec(0.3, 1500.0)))
    link.send_rx([QiPacket.ept()], depth=0.05)
    run(link, 4)

    assert link.next_event().kind != EventKind.Packet or not link.receptions[0].intact
    assert link.stability_trips


def test_response_is_delivered_when_it_ends(link, charger):
    stop = link.send_response(ACK, 1.0, charger.params)

    assert link.complete_responses(stop - 1e-3) == ([], [])
    assert link.complete_responses(stop) == ([ACK], [])
    assert link.complete_responses(stop + 5e-3) == ([], [])


def test_ripple_is_handed_out_when_observed(link, charger):
    link.observe_ripples = True
    stop = link.send_response(ACK, 1.0, charger.params)

    responses, ripples = link.complete_responses(stop + 5e-3)

    assert responses == [ACK]
    assert len(ripples) == 1
    assert ripples[0].t0 == pytest.approx(1.0 - 5e-3)


def test_reception_log_is_bounded(charger, monkeypatch):
    monkeypatch.setattr("pyqiemi.channel.in_band_link.RECEPTION_LOG", 2)
    link = InBandLink(charger.params, charger.profile, seed=1)
    run(link, 1)
    packets = [QiPacket.sig(strength) for strength in range(1, 6)]
    link.send_rx(packets, depth=0.05)
    run(link, 20)

    assert len(link.receptions) == 2
    assert [reception.transmission.packet for reception in link.first_receptions] == packets[:2]
    assert [reception.transmission.packet for reception in link.receptions] == packets[3:]
