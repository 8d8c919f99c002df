import numpy as np
import pytest

from pyqiemi.attacker import ActionType, AttackAction, AttackKind, AttackPlan
from pyqiemi.circuit import SystemParams
from pyqiemi.config import DEMOS_DIR
from pyqiemi.exceptions import ConfigurationError
from pyqiemi.scenario import ScenarioConfig, ScenarioKind, ScenarioStatus, run_scenario
from pyqiemi.scenario.scenarios import jams_receiver, spectral_correlation, voice_action


def demo(kind: ScenarioKind, tmp_path, **changes) -> ScenarioConfig:
    data = ScenarioConfig.load(f"{DEMOS_DIR}/{kind.value}.yaml").to_dict()
    data.update(changes, outputs=str(tmp_path / kind.value))
    return ScenarioConfig.from_dict(data)


def test_baseline_charge(tmp_path):
    report = run_scenario(demo(ScenarioKind.BaselineCharge, tmp_path), write=False)

    assert report.status == ScenarioStatus.Passed, report.failed
    assert report.metrics["final_phase"] == "PowerTransfer"
    assert report.metrics["steady_received_power"] == pytest.approx(10.0, rel=0.05)
    assert report.metrics["peak_temperature"] < 113.0


def test_eavesdrop_recovers_packets_and_charger(tmp_path):
    report = run_scenario(demo(ScenarioKind.EavesdropDemo, tmp_path))

    assert report.status == ScenarioStatus.Passed, report.failed
    assert report.metrics["rx_packets_sent"] == 6
    assert report.metrics["charger_manufacturer"] == "0x0042"
    with open(report.files["messages"]) as messages_file:
        lines = messages_file.read().splitlines()
    assert any("dir=tx_to_rx" in line and "manufacturer=0x0042" in line for line in lines)
    assert "eavesdrop_adapter" in report.files


def test_voice_injection_tone(tmp_path):
    report = run_scenario(demo(ScenarioKind.VoiceInjection, tmp_path), write=False)

    assert report.status == ScenarioStatus.Passed, report.failed
    assert report.metrics["K"] == pytest.approx(0.99, abs=0.02)
    assert report.metrics["envelope_depth"] == pytest.approx(0.3 * 0.99, abs=0.01)
    assert report.metrics["stealth"] == "stealthy"
    assert report.metrics["stability_tripped"] is False


def test_voice_injection_above_stability_limit(tmp_path):
    attack = {"kind": "voice_injection", "schedule": [{"start": 4.0, "action": "noise", "m_i": 0.45,
                                                       "f_i": 1000.0}]}
    report = run_scenario(demo(ScenarioKind.VoiceInjection, tmp_path, attack=attack), write=False)

    assert report.metrics["stealth"] == "disruptive"
    assert report.metrics["stability_tripped"] is True


def test_voice_injection_chirp(tmp_path):
    attack = {"kind": "voice_injection", "schedule": [{"start": 4.0, "action": "voice", "chirp": [300.0, 3000.0],
                                                       "duration": 0.5, "depth": 0.3}]}
    report = run_scenario(demo(ScenarioKind.VoiceInjection, tmp_path, attack=attack), write=False)

    assert report.metrics["spectral_correlation"] > 0.9
    assert report.metrics["envelope_depth"] > 0.25
    assert "envelope_depth_law" not in report.assertions


def test_power_toast_with_jamming(tmp_path):
    report = run_scenario(demo(ScenarioKind.PowerToast, tmp_path), write=False)

    assert report.status == ScenarioStatus.Passed, report.failed
    assert report.metrics["p1_at"] < report.metrics["p2_at"] < report.metrics["p3_at"]
    assert report.metrics["final_temperature"] == pytest.approx(178.0, abs=5.0)
    assert report.metrics["final_phase"] == "PowerTransfer"


def test_power_toast_without_jamming(tmp_path):
    attack = {"kind": "toast", "schedule": [{"start": 3.0, "action": "toast", "jam": False}]}
    report = run_scenario(demo(ScenarioKind.PowerToast, tmp_path, attack=attack, duration=60.0), write=False)

    assert report.status == ScenarioStatus.Passed, report.failed
    assert report.assertions == {"ept_terminated": True, "stopped_before_p2": True}
    assert report.metrics["termination_reason"] == "ept"
    assert report.metrics["p2_at"] is None


def test_fod_destruction(tmp_path):
    report = run_scenario(demo(ScenarioKind.FodDestruction, tmp_path), write=False)

    assert report.status == ScenarioStatus.Passed, report.failed
    assert report.metrics["protocol"] == "Extended"
    assert report.metrics["paper_clip_steady_temperature"] > 536.0
    assert report.metrics["paper_clip_damaged_at"] <= 40.0


def test_fod_destruction_honest_reference_q(tmp_path):
    attack = {"kind": "fod_handshake", "schedule": [{"start": 0.0, "action": "fod_handshake", "reference_q": 150}]}
    report = run_scenario(demo(ScenarioKind.FodDestruction, tmp_path, attack=attack, duration=10.0), write=False)

    assert report.status == ScenarioStatus.Failed
    assert not report.assertions["extended_power_transfer"]
    assert not report.assertions["objects_damaged"]


def test_fod_destruction_filtered_charger(tmp_path):
    report = run_scenario(demo(ScenarioKind.FodDestruction, tmp_path, charger="charger_15w_filtered",
                               duration=10.0), write=False)

    assert report.status == ScenarioStatus.Failed
    assert report.metrics["paper_clip_damaged_at"] is None


def test_same_seed_same_report(tmp_path):
    first = run_scenario(demo(ScenarioKind.VoiceInjection, tmp_path, duration=4.5), write=False)
    second = run_scenario(demo(ScenarioKind.VoiceInjection, tmp_path, duration=4.5), write=False)
    assert first.summary_rows() == second.summary_rows()


def test_voice_action_missing():
    with pytest.raises(ConfigurationError):
        voice_action(AttackPlan(AttackKind.Jam, (AttackAction(0.0, ActionType.Jam),)))


def test_voice_action_first_injection():
    noise = AttackAction(2.0, ActionType.Noise, {"m_i": 0.2})
    plan = AttackPlan(AttackKind.VoiceInjection, (AttackAction(0.0, ActionType.Jam), noise))
    assert voice_action(plan) is noise


@pytest.mark.parametrize("schedule,jams", [
    ((AttackAction(0.0, ActionType.Toast),), True),
    ((AttackAction(0.0, ActionType.Toast, {"jam": False}),), False),
    ((AttackAction(0.0, ActionType.Toast, {"jam": False}), AttackAction(1.0, ActionType.Jam)), True),
])
def test_jams_receiver(schedule, jams):
    assert jams_receiver(AttackPlan(AttackKind.Toast, schedule)) == jams


def test_spectral_correlation_of_out_of_band_source():
    rate = 100e3
    t = np.arange(10000) / rate
    source = np.sin(2 * np.pi * 20e3 * t)
    assert spectral_correlation(SystemParams(), source, 0.3 * source, rate) == 0.0


def test_spectral_correlation_of_empty_source():
    assert spectral_correlation(SystemParams(), np.zeros(0), np.zeros(0), 100e3) == 0.0
