"""
The built-in scenarios: compliant charging, passive eavesdropping, and the voice injection, power
toasting and foreign-object destruction attacks.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from pyqiemi.attacker import (ActionType, AttackAction, AttackPlan, Attacker, classify_stealth, inject_voice,
                              voice_material)
from pyqiemi.attacker.injection import VOICE_BAND, VOICE_DEPTH
from pyqiemi.channel import ChargingChannel
from pyqiemi.channel.in_band_link import RATE
from pyqiemi.charger import Charger, Phase, TerminationReason
from pyqiemi.circuit import (InterferenceSpec, SystemParams, bus_dc_voltage, bus_voltage, propagate_interference,
                             scaling_factor)
from pyqiemi.codec import FskResponse, PacketKind, QiPacket
from pyqiemi.eavesdropper import recover_ask, recover_fsk, synthesize_adapter_trace, synthesize_fsk_ripple
from pyqiemi.exceptions import ConfigurationError
from pyqiemi.receiver import Protection
from pyqiemi.scenario.scenario_config import ScenarioKind
from pyqiemi.scenario.scenario_context import ScenarioContext
from pyqiemi.scenario.scenario_router import ScenarioRouter
from pyqiemi.signal import Trace, Unit, modulation_depth

logger = logging.getLogger(__name__)

router = ScenarioRouter()

STEADY_WINDOW = 5.0
POWER_TOLERANCE = 0.05
PLATEAU = 178.0
PLATEAU_TOLERANCE = 5.0
DEPTH_TOLERANCE = 0.01
CORRELATION_FLOOR = 0.9
EAVESDROP_PACKETS = 6
EAVESDROP_NOISE = 0.01
EAVESDROP_IDLE = 5e-3
MEASURE_DURATION = 0.02
MEASURE_OVERSAMPLING = 20


class Milestones(object):
    """First time each notable thing happened during a run."""

    def __init__(self):
        self.power_transfer_at: Optional[float] = None
        self.extended_at: Optional[float] = None
        self.termination: Optional[Tuple[float, TerminationReason]] = None
        self.protections: Dict[Protection, float] = {}
        self.damaged: Dict[str, float] = {}
        self.peak_temperature: Optional[float] = None

    def observe(self, channel: ChargingChannel) -> None:
        now, state = channel.now, channel.state
        if state.phase == Phase.PowerTransfer and self.power_transfer_at is None:
            self.power_transfer_at = now
        if state.extended and self.extended_at is None:
            self.extended_at = now
        if state.phase == Phase.Terminated and self.termination is None:
            self.termination = (now, state.termination_reason)
        if channel.rx_state is not None:
            for protection in channel.rx_state.protections:
                self.protections.setdefault(protection, now)
        for obj in channel.objects:
            if obj.damaged:
                self.damaged.setdefault(obj.name, now)
        temperature = channel.records[-1].temperature if channel.records else None
        if temperature is not None and (self.peak_temperature is None or temperature > self.peak_temperature):
            self.peak_temperature = temperature


def build_channel(context: ScenarioContext) -> ChargingChannel:
    config, library = context.config, context.library
    profile = library.charger(config.charger)
    charger = Charger(profile, library.system(config.system or profile.system))
    receiver = library.receiver(config.receiver) if config.receiver else None
    objects = [library.foreign_object(name) for name in config.objects]
    channel = ChargingChannel(charger, receiver, objects, seed=config.seed, log=context.log)
    capture = config.settings.get("capture")
    if capture:
        channel.capture(float(capture[0]), float(capture[1]))
    if config.attack is not None:
        channel.attach_attacker(Attacker(config.attack, horizon=config.duration, f_p_nominal=channel.params.f_p,
                                         log=context.log))
    context.channel = channel
    return channel


def simulate(context: ScenarioContext, channel: ChargingChannel) -> Milestones:
    milestones = Milestones()
    for _ in range(int(round(context.config.duration / channel.dt))):
        channel.tick()
        milestones.observe(channel)
    _record_run(context, channel, milestones)
    if channel.attacker is not None:
        context.messages.extend(channel.attacker.recovered)
    return milestones


def _record_run(context: ScenarioContext, channel: ChargingChannel, milestones: Milestones) -> None:
    report, state = context.report, channel.state
    report.metric("final_phase", state.phase.value)
    report.metric("protocol", state.protocol.value)
    report.metric("transmitted_power", float(channel.power))
    report.metric("power_transfer_at", milestones.power_transfer_at)
    termination_at, reason = milestones.termination or (None, None)
    report.metric("terminated_at", termination_at)
    report.metric("termination_reason", reason.value if reason else None)
    report.metric("stability_trips", len(channel.stability_trips))
    if channel.records:
        report.metric("final_temperature", float(channel.records[-1].temperature))
        report.metric("peak_temperature", float(milestones.peak_temperature))


def steady_received_power(channel: ChargingChannel, window: float = STEADY_WINDOW) -> float:
    ticks = max(1, int(round(window / channel.dt)))
    powers = [record.power for record in channel.records[-ticks:]]
    return channel.received_fraction * float(np.mean(powers)) if powers else 0.0


@router.scenario(ScenarioKind.BaselineCharge)
def baseline_charge(context: ScenarioContext) -> None:
    channel = build_channel(context)
    milestones = simulate(context, channel)
    report = context.report
    target = channel.receiver.target_power
    steady = steady_received_power(channel)
    report.metric("target_power", float(target))
    report.metric("steady_received_power", steady)
    report.check("power_transfer", channel.state.phase == Phase.PowerTransfer)
    report.check("steady_power_within_5pct", abs(steady - target) <= POWER_TOLERANCE * target)
    report.check("no_protections", not milestones.protections)


@router.scenario(ScenarioKind.EavesdropDemo)
def eavesdrop_demo(context: ScenarioContext) -> None:
    """
    Runs a compliant charge, then eavesdrops on it from the adapter: the receiver's first packets are
    recovered from the load-change pulses they cause, and the charger's identity from its FSK ripple.
    """
    config = context.config
    channel = build_channel(context)
    simulate(context, channel)
    report = context.report
    rng = np.random.default_rng(config.seed)
    p = channel.params.with_duty(channel.state.duty)

    count = int(config.settings.get("packets", EAVESDROP_PACKETS))
    sent = [reception.transmission.packet for reception in channel.link.first_receptions
            if reception.transmission.legitimate][:count]
    adapter = _adapter_recording(p, sent, channel.receiver.ask_depth,
                                 float(config.settings.get("noise_fraction", EAVESDROP_NOISE)), rng)
    context.traces["eavesdrop_adapter"] = adapter
    ask_messages = recover_ask(adapter)
    context.messages.extend(ask_messages)
    recovered = [message.packet for message in ask_messages]
    report.metric("rx_packets_sent", len(sent))
    report.metric("rx_packets_recovered", sum(packet in recovered for packet in sent))
    signal_strengths = [packet for packet in sent if packet.kind == PacketKind.SIG]
    report.check("sig_recovered", bool(signal_strengths) and signal_strengths[0] in recovered)

    charger_id = channel.rx_state.charger_id
    identified = False
    if charger_id is not None:
        fsk_messages = recover_fsk(synthesize_fsk_ripple(p, FskResponse.data(charger_id), rng=rng), p.f_p)
        context.messages.extend(fsk_messages)
        identities = [message.identification for message in fsk_messages]
        identified = charger_id in identities
        report.metric("charger_manufacturer", f"0x{charger_id.manufacturer_code:04X}")
    report.check("charger_id_recovered", identified)


def _adapter_recording(p: SystemParams, packets: List[QiPacket], depth: float, noise_fraction: float,
                       rng: np.random.Generator) -> Trace:
    chunks = [synthesize_adapter_trace(p, packet, RATE, depth=depth, idle=EAVESDROP_IDLE).samples
              for packet in packets]
    samples = np.concatenate(chunks) if chunks else np.zeros(0)
    if len(samples) and noise_fraction > 0:
        samples = samples + rng.normal(0.0, noise_fraction * float(np.max(np.abs(samples))), len(samples))
    return Trace(RATE, samples, Unit.Volts)


@router.scenario(ScenarioKind.VoiceInjection)
def voice_injection(context: ScenarioContext) -> None:
    """
    Injects a tone or voice waveform on the adapter output while a phone charges and reports the
    modulation it leaves on the coil current, together with the charging-stability proxy.
    """
    config = context.config
    action = voice_action(config.attack)
    channel = build_channel(context)
    simulate(context, channel)
    report = context.report
    p = channel.params

    m_i, f_i, source, deviation, rate = _coil_modulation(p, action)
    depth = modulation_depth(Trace(rate, 1 + deviation))
    correlation = spectral_correlation(p, source, deviation, rate)
    report.metric("m_i", m_i)
    report.metric("f_i", f_i)
    report.metric("envelope_depth", depth)
    report.metric("K", depth / m_i if m_i > 0 else None)
    report.metric("stealth", classify_stealth(m_i).value)
    report.metric("spectral_correlation", correlation)
    if f_i is not None and f_i >= RATE / 2:
        logger.warning(f"Interference at {f_i:g} Hz is above what the charging link renders at {RATE:g} S/s, "
                       f"the stability proxy is not evaluated")
        report.metric("stability_tripped", None)
    else:
        report.metric("stability_tripped", any(t >= action.start for t in channel.stability_trips))

    if action.action == ActionType.Noise:
        expected = scaling_factor(p, f_i) * m_i
        report.metric("expected_depth", expected)
        report.check("envelope_depth_law", abs(depth - expected) <= DEPTH_TOLERANCE)
    activation = channel.receiver.voice_activation_depth
    report.metric("activation_depth", activation)
    report.check("voice_delivered", depth >= activation and correlation >= CORRELATION_FLOOR)


def voice_action(plan: Optional[AttackPlan]) -> AttackAction:
    """
    Raises:
        ConfigurationError: If the plan has no noise or voice action

    """
    for action in plan.schedule if plan else ():
        if action.action in (ActionType.Noise, ActionType.Voice):
            return action
    raise ConfigurationError("voice_injection needs a noise or voice action in its attack plan")


def _coil_modulation(p: SystemParams, action: AttackAction) -> Tuple[float, Optional[float], np.ndarray,
                                                                     np.ndarray, float]:
    """Depth, tone frequency, normalized source and bus deviation of the action's interference."""
    if action.action == ActionType.Noise:
        m_i, f_i = float(action.get("m_i", 0.0)), float(action.get("f_i", 1000.0))
        rate = max(RATE, MEASURE_OVERSAMPLING * f_i)
        duration = max(MEASURE_DURATION, 4 / f_i) if f_i > 0 else MEASURE_DURATION
        spec = InterferenceSpec(m_i, f_i)
        bus = bus_voltage(p, spec, duration, rate)
        source = spec.normalized_waveform(duration, rate)
        return m_i, f_i, source, bus.samples / bus_dc_voltage(p) - 1, rate
    depth = float(action.get("depth", VOICE_DEPTH))
    audio = voice_material(action.params, RATE)
    injected = inject_voice(audio, depth)
    f_i = float(action.params["tone"]) if "tone" in action.params else None
    source = injected.samples / depth if depth > 0 else injected.samples
    return depth, f_i, source, propagate_interference(p, injected), audio.sample_rate


def spectral_correlation(p: SystemParams, source: np.ndarray, deviation: np.ndarray, rate: float) -> float:
    """
    Correlation between the voice-band spectrum of the source and that of the coil modulation once the
    per-frequency scaling factor is compensated
    """
    if len(source) == 0:
        return 0.0
    freqs = np.fft.rfftfreq(len(source), d=1 / rate)
    band = (freqs > 0) & (freqs <= VOICE_BAND)
    source_spectrum = np.abs(np.fft.rfft(source))
    modulation_spectrum = np.abs(np.fft.rfft(deviation))
    in_band = source_spectrum[band]
    if np.sum(in_band ** 2) <= 1e-12 * np.sum(source_spectrum ** 2) or not np.any(modulation_spectrum[band]):
        return 0.0
    compensated = modulation_spectrum[band] / scaling_factor(p, freqs[band])
    if np.std(in_band) == 0 or np.std(compensated) == 0:
        return 0.0
    return float(np.corrcoef(in_band, compensated)[0, 1])


@router.scenario(ScenarioKind.PowerToast)
def power_toast(context: ScenarioContext) -> None:
    """
    Keeps a phone charging past its own protections with forged CE/RP packets. Without jamming the
    phone's EPT gets through and ends the transfer.
    """
    channel = build_channel(context)
    milestones = simulate(context, channel)
    report = context.report
    for protection in Protection:
        report.metric(f"{protection.value.lower()}_at", milestones.protections.get(protection))

    plateau = float(context.config.settings.get("plateau", PLATEAU))
    temperature = channel.rx_state.temp
    if jams_receiver(context.config.attack):
        for protection in Protection:
            report.check(f"{protection.value.lower()}_fired", protection in milestones.protections)
        report.check("transfer_continues", channel.state.phase == Phase.PowerTransfer)
        report.check("temperature_plateau", abs(temperature - plateau) <= PLATEAU_TOLERANCE)
    else:
        termination = milestones.termination
        report.check("ept_terminated", termination is not None and termination[1] == TerminationReason.Ept)
        report.check("stopped_before_p2", Protection.P2 not in milestones.protections)


def jams_receiver(plan: Optional[AttackPlan]) -> bool:
    for action in plan.schedule if plan else ():
        if action.action == ActionType.Jam:
            return True
        if action.action == ActionType.Toast and bool(action.get("jam", True)):
            return True
    return False


@router.scenario(ScenarioKind.FodDestruction)
def fod_destruction(context: ScenarioContext) -> None:
    """
    Talks the charger into extended power transfer with nothing but foreign objects on the pad and
    reports what the objects went through.
    """
    channel = build_channel(context)
    milestones = simulate(context, channel)
    report = context.report
    power = channel.state.transmitted_power_estimate
    report.metric("extended_at", milestones.extended_at)
    report.check("extended_power_transfer", milestones.extended_at is not None)

    above = []
    for obj in channel.objects:
        steady = obj.thermal.steady_state(obj.absorption * power)
        report.metric(f"{obj.name}_temperature", float(obj.temp))
        report.metric(f"{obj.name}_steady_temperature", float(steady))
        report.metric(f"{obj.name}_damaged_at", milestones.damaged.get(obj.name))
        above.append(steady > obj.damage_temp)
    report.check("objects_damaged", all(obj.damaged for obj in channel.objects))
    report.check("steady_temperature_above_damage", all(above))
