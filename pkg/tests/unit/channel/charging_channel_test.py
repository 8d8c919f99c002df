from dataclasses import replace

import numpy as np
import pytest

from pyqiemi.attacker import (ActionType, AttackAction, AttackKind, Attacker, AttackPlan, HandshakeState,
                              run_fod_handshake, toast_loop)
from pyqiemi.channel import ChargingChannel
from pyqiemi.charger import Charger, Phase, Protocol, TerminationReason
from pyqiemi.receiver import RxPhase
from pyqiemi.signal import Unit


@pytest.fixture
def phone_channel(charger, phone_profile):
    return ChargingChannel(charger, phone_profile, seed=3)


@pytest.fixture
def clip_channel(charger, paper_clip):
    return ChargingChannel(charger, objects=[paper_clip], seed=3)


def test_tick_must_hold_whole_samples(charger):
    with pytest.raises(ValueError):
        ChargingChannel(charger, dt=1.5e-5)


def test_phone_negotiates_extended_power_transfer(phone_channel):
    phone_channel.run(5.0)

    assert phone_channel.state.phase == Phase.PowerTransfer
    assert phone_channel.state.protocol == Protocol.Extended
    assert phone_channel.state.guaranteed_power == 10
    assert phone_channel.rx_state.phase == RxPhase.Charging
    assert phone_channel.rx_state.charger_id is not None
    assert not phone_channel.stability_trips


def test_charging_settles_near_the_target(phone_channel):
    phone_channel.run(15.0)
    assert phone_channel.received_power == pytest.approx(10.0, abs=1.5)


def test_one_log_line_per_tick(phone_channel):
    phone_channel.run(1.0)
    assert len(phone_channel.log) == 100
    assert phone_channel.log.lines[0].startswith("t=0.010 phase=Ping")


def test_same_seed_same_run(charger, phone_profile):
    first, second = ChargingChannel(charger, phone_profile, seed=8), ChargingChannel(charger, phone_profile, seed=8)
    first.run(3.0)
    second.run(3.0)

    assert first.log.lines == second.log.lines
    assert np.array_equal(first.traces()[1].samples, second.traces()[1].samples)


def test_empty_pad_keeps_pinging(charger):
    channel = ChargingChannel(charger, seed=1)
    channel.run(2.0)

    assert channel.state.phase == Phase.Ping
    assert sum(" phase=Ping " in line for line in channel.log.lines) == 200


def test_traces_are_tick_means_without_capture(phone_channel):
    phone_channel.run(1.0)
    adapter, envelope, power, temperature = phone_channel.traces()

    assert adapter.sample_rate == 100
    assert len(adapter) == len(power) == len(temperature) == 100
    assert np.allclose(adapter.samples, 9.0)
    assert temperature.unit == Unit.Fahrenheit


def test_capture_keeps_the_full_rate(phone_channel):
    phone_channel.capture(0.0, 0.5)
    phone_channel.run(1.0)
    adapter, envelope, _, _ = phone_channel.traces()

    assert adapter.sample_rate == 100e3
    assert len(adapter) == len(envelope) == 50000
    assert np.mean(adapter.samples) == pytest.approx(9.0, abs=0.05)


def test_jamming_ends_power_transfer(charger, phone_profile):
    channel = ChargingChannel(charger, phone_profile, seed=5)
    channel.run(3.0)
    attacker = Attacker(AttackPlan(AttackKind.Jam, (AttackAction(3.0, ActionType.Jam, {"depth": 0.2}),), seed=5),
                        horizon=6.0)
    channel.attach_attacker(attacker)
    channel.run(3.0)

    assert channel.state.phase == Phase.Terminated
    assert channel.state.termination_reason in (TerminationReason.CeTimeout, TerminationReason.Ept)
    assert channel.stability_trips


def test_fod_handshake_destroys_a_paper_clip(clip_channel):
    transcript = run_fod_handshake(clip_channel, 40.0, reference_q=0)

    assert clip_channel.state.extended
    assert clip_channel.objects[0].damaged
    assert any("toasting" in line for line in transcript)


def test_honest_reference_q_is_refused(clip_channel):
    run_fod_handshake(clip_channel, 10.0, reference_q=150)

    assert not clip_channel.state.extended
    assert clip_channel.attacker.behaviours == [] or \
        clip_channel.attacker.behaviours[0].state == HandshakeState.Aborted
    assert not clip_channel.objects[0].damaged


def test_countermeasure_defeats_the_handshake(charger, paper_clip):
    guarded = Charger(replace(charger.profile, countermeasure=True), charger.params)
    channel = ChargingChannel(guarded, objects=[paper_clip], seed=3)

    run_fod_handshake(channel, 10.0, reference_q=0)

    assert channel.state.phase != Phase.PowerTransfer
    assert not channel.objects[0].damaged


def test_toast_keeps_a_stopping_phone_charged(charger, phone_profile):
    channel = ChargingChannel(charger, phone_profile, seed=2)
    channel.run(3.0)
    toast_loop(channel, 40.0, start=3.0)

    assert channel.state.phase == Phase.PowerTransfer
    assert channel.rx_state.temp > phone_profile.protection_thresholds.p1


@pytest.mark.parametrize("control_error,direction", [(112, 1), (0, 0), (-128, -1)])
def test_forged_control_errors_steer_power(charger, phone_profile, control_error, direction):
    channel = ChargingChannel(charger, phone_profile, seed=4)
    channel.run(10.0)
    before = channel.state.transmitted_power_estimate

    toast_loop(channel, 3.0, start=10.0, ce=control_error)
    after = channel.state.transmitted_power_estimate

    assert channel.state.phase == Phase.PowerTransfer
    if direction == 0:
        assert after == pytest.approx(before, abs=0.5)
    else:
        assert (after - before) * direction > 2.0
