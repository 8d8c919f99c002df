"""
What the attacker does for each kind of attack action. Behaviours are registered per action type
and stepped once per tick with what the attacker can observe from the adapter side.
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Callable, Dict, Optional, Tuple, Type

from pyqiemi.attacker.attack_plan import ActionType, AttackAction, packet_from_spec
from pyqiemi.attacker.injection import (FORGE_DEPTH, VOICE_DEPTH, NoiseSource, WaveformSource, inject_voice,
                                        voice_material)
from pyqiemi.attacker.jamming import JAM_DEPTH
from pyqiemi.circuit import InterferenceSpec
from pyqiemi.codec import FskKind, FskResponse, PacketKind, QiPacket
from pyqiemi.codec.packet import HEADERS
from pyqiemi.eavesdropper import recover_fsk
from pyqiemi.exceptions import InvalidAttackPlan
from pyqiemi.signal import Trace

if TYPE_CHECKING:
    from pyqiemi.attacker.attacker import Attacker

logger = logging.getLogger(__name__)

POWER_PRESENT = 0.1
RESPONSE_TIMEOUT = 1.5
TOAST_PERIOD = 0.1
TOAST_RP_INTERVAL = 1.0
MAX_CONTROL_ERROR = 127


@dataclass(frozen=True)
class Observation:
    """
    What the attacker sees at the adapter output at the end of a tick

    Args:
        now (float): Simulation time in seconds
        adapter_power (float): Power drawn from the adapter in watts
        ripples (Tuple[Trace, ...]): Carrier-domain adapter ripple of every charger response that ended during the tick
    """
    now: float
    adapter_power: float = 0.0
    ripples: Tuple[Trace, ...] = ()


class Behaviour(ABC):
    def __init__(self, attacker: "Attacker", action: AttackAction):
        self.attacker = attacker
        self.action = action
        self.done = False

    @abstractmethod
    def step(self, observation: Observation) -> None:
        raise NotImplementedError()

    def until(self) -> float:
        duration = self.action.get("duration")
        return self.attacker.horizon if duration is None else self.action.start + float(duration)

    def __repr__(self) -> str:
        return str({"action": self.action.action.value, "start": self.action.start, "done": self.done})


class BehaviourRegistry(object):
    def __init__(self):
        self.behaviours: Dict[ActionType, Type[Behaviour]] = {}

    def behaviour(self, action_type: ActionType) -> Callable[[Type[Behaviour]], Type[Behaviour]]:
        def wrapper(cls: Type[Behaviour]) -> Type[Behaviour]:
            self.behaviours[action_type] = cls
            return cls

        return wrapper

    def create(self, attacker: "Attacker", action: AttackAction) -> Behaviour:
        try:
            behaviour_class = self.behaviours[action.action]
        except KeyError:
            raise InvalidAttackPlan(f"No behaviour registered for {action.action.value}")
        return behaviour_class(attacker, action)


registry = BehaviourRegistry()


@registry.behaviour(ActionType.Noise)
class NoiseBehaviour(Behaviour):
    def step(self, observation: Observation) -> None:
        try:
            spec = InterferenceSpec(float(self.action.params["m_i"]), float(self.action.get("f_i", 1000.0)))
        except KeyError:
            raise InvalidAttackPlan("Noise action needs an interference depth m_i")
        self.attacker.add_source(NoiseSource(spec, max(self.action.start, observation.now), self.until()))
        self.attacker.record(observation, "noise", f"m_i={spec.m_i:g} f_i={spec.f_i:g}", spec.m_i)
        self.done = True


@registry.behaviour(ActionType.Voice)
class VoiceBehaviour(Behaviour):
    def step(self, observation: Observation) -> None:
        depth = float(self.action.get("depth", VOICE_DEPTH))
        audio = voice_material(self.action.params, self.attacker.rate, t0=max(self.action.start, observation.now))
        self.attacker.add_source(WaveformSource(inject_voice(audio, depth)))
        self.attacker.record(observation, "voice", f"{audio.duration:.3f}s", depth)
        self.done = True


@registry.behaviour(ActionType.Jam)
class JamBehaviour(Behaviour):
    def step(self, observation: Observation) -> None:
        depth = float(self.action.get("depth", self.action.get("jam_depth", JAM_DEPTH)))
        self.attacker.jam(depth, max(self.action.start, observation.now), self.until())
        self.attacker.record(observation, "jam", f"until={self.until():.3f}", depth)
        self.done = True


@registry.behaviour(ActionType.Forge)
class ForgeBehaviour(Behaviour):
    def __init__(self, attacker: "Attacker", action: AttackAction):
        super().__init__(attacker, action)
        if "packet" not in action.params:
            raise InvalidAttackPlan("Forge action needs a packet")
        self.packet = packet_from_spec(action.params["packet"])
        self.depth = float(action.get("depth", action.get("forge_depth", FORGE_DEPTH)))
        period = action.get("period")
        self.period = None if period is None else float(period)
        count = action.get("count")
        self.remaining = int(count) if count is not None else (None if self.period else 1)
        self.next_send = action.start

    def step(self, observation: Observation) -> None:
        if observation.now >= self.until() or self.remaining == 0:
            self.done = True
            return
        if observation.now < self.next_send:
            return
        self.attacker.forge(self.packet, self.depth)
        self.attacker.record(observation, "forge", repr(self.packet), self.depth)
        if self.remaining is not None:
            self.remaining -= 1
        if self.period is None:
            self.done = self.remaining == 0
            return
        while self.next_send <= observation.now:
            self.next_send += self.period


@registry.behaviour(ActionType.Toast)
class ToastBehaviour(Behaviour):
    def __init__(self, attacker: "Attacker", action: AttackAction, begin: Optional[float] = None):
        """
        Keeps the charger transmitting: CE(+max) every `period` and an RP echoing the adapter power every
        `rp_interval`, while jamming drowns whatever the receiver says
        """
        super().__init__(attacker, action)
        self.period = float(action.get("period", TOAST_PERIOD))
        self.rp_interval = float(action.get("rp_interval", TOAST_RP_INTERVAL))
        self.control_error = int(action.get("ce", MAX_CONTROL_ERROR))
        self.jamming = bool(action.get("jam", True))
        self.jam_depth = float(action.get("jam_depth", JAM_DEPTH))
        self.forge_depth = float(action.get("forge_depth", FORGE_DEPTH))
        self.begin(action.start if begin is None else begin)

    def begin(self, now: float) -> None:
        self.started = False
        self.next_ce = now
        self.next_rp = now + self.rp_interval

    def step(self, observation: Observation) -> None:
        now = observation.now
        if now >= self.until():
            self.done = True
            return
        if not self.started:
            self.started = True
            if self.jamming:
                self.attacker.jam(self.jam_depth, now, self.until())
            self.attacker.record(observation, "toast", f"jam={self.jamming}", self.forge_depth)
        if now >= self.next_rp and observation.adapter_power > POWER_PRESENT:
            packet = QiPacket.rp(observation.adapter_power * 1000)
            self.attacker.forge(packet, self.forge_depth)
            self.attacker.record(observation, "toast", repr(packet), self.forge_depth)
            self.next_rp = _next_after(self.next_rp, self.rp_interval, now)
        if now >= self.next_ce:
            self.attacker.forge(QiPacket.ce(self.control_error), self.forge_depth)
            self.next_ce = _next_after(self.next_ce, self.period, now)


class HandshakeState(Enum):
    Waiting = "waiting"
    AwaitingFod = "awaiting-fod"
    AwaitingId = "awaiting-id"
    AwaitingGuarantee = "awaiting-guarantee"
    AwaitingEnd = "awaiting-end"
    Toasting = "toasting"
    Aborted = "aborted"


@registry.behaviour(ActionType.FodHandshake)
class FodHandshakeBehaviour(Behaviour):
    def __init__(self, attacker: "Attacker", action: AttackAction):
        """
        Talks a charger into power transfer with no receiver on the pad: answers a ping with SIG, ID
        and CFG, claims a reference Q-factor the pad satisfies, negotiates and then keeps the charger
        transmitting with the toast loop. Charger responses are read from the adapter ripple.
        """
        super().__init__(attacker, action)
        self.reference_q = int(action.get("reference_q", 0))
        self.neg_bit = bool(action.get("neg_bit", True))
        self.guaranteed_power = float(action.get("guaranteed_power", 5.0))
        self.depth = float(action.get("forge_depth", FORGE_DEPTH))
        self.identity = QiPacket.identification(int(action.get("version", 0x12)),
                                                int(action.get("manufacturer_code", 0x0000)),
                                                int(action.get("device_identifier", 0x00000001)))
        self.toast = ToastBehaviour(attacker, action)
        self.state = HandshakeState.Waiting
        self.armed = False
        self.deadline = math.inf
        self.charger_id: Optional[QiPacket] = None

    def step(self, observation: Observation) -> None:
        if observation.now >= self.until():
            self.done = True
            return
        if self.state == HandshakeState.Waiting:
            self._wait_for_ping(observation)
        elif self.state == HandshakeState.Toasting:
            self.toast.step(observation)
            self.done = self.toast.done
        else:
            self._negotiate(observation)

    def _wait_for_ping(self, observation: Observation) -> None:
        if observation.adapter_power <= POWER_PRESENT:
            self.armed = True
            return
        if not self.armed:
            return
        self.armed = False
        for packet in (QiPacket.sig(0xFF), self.identity, QiPacket.cfg(self.neg_bit, self.guaranteed_power)):
            self.attacker.forge(packet, self.depth)
        if not self.neg_bit:
            self._enter(observation, HandshakeState.Toasting, "cfg baseline")
            self.toast.begin(observation.now)
            return
        self.attacker.forge(QiPacket.fod(self.reference_q), self.depth)
        self._enter(observation, HandshakeState.AwaitingFod, f"fod reference_q={self.reference_q}")

    def _negotiate(self, observation: Observation) -> None:
        response = self._response(observation)
        if response is None:
            if observation.now > self.deadline:
                self.armed = False
                self._enter(observation, HandshakeState.Waiting, "response timeout")
            return
        if response.kind == FskKind.NAK:
            self._enter(observation, HandshakeState.Aborted, f"nak in {self.state.value}")
            self.done = True
            return

        if self.state == HandshakeState.AwaitingFod and response.kind == FskKind.ACK:
            self.attacker.forge(QiPacket.grq(HEADERS[PacketKind.ID]), self.depth)
            self._enter(observation, HandshakeState.AwaitingId, "fod ack")
        elif self.state == HandshakeState.AwaitingId and response.kind == FskKind.DATA:
            self.charger_id = response.packet
            self.attacker.forge(QiPacket.srq_guaranteed_power(self.guaranteed_power), self.depth)
            self._enter(observation, HandshakeState.AwaitingGuarantee, f"charger {response.packet!r}")
        elif self.state == HandshakeState.AwaitingGuarantee and response.kind == FskKind.ACK:
            self.attacker.forge(QiPacket.srq_end(), self.depth)
            self._enter(observation, HandshakeState.AwaitingEnd, "guarantee ack")
        elif self.state == HandshakeState.AwaitingEnd and response.kind == FskKind.ACK:
            self._enter(observation, HandshakeState.Toasting, "end ack")
            self.toast.begin(observation.now)
            self.toast.step(observation)

    def _response(self, observation: Observation) -> Optional[FskResponse]:
        for ripple in observation.ripples:
            for message in recover_fsk(ripple, self.attacker.f_p_nominal):
                self.attacker.recovered.append(message)
                return message.packet
        return None

    def _enter(self, observation: Observation, state: HandshakeState, event: str) -> None:
        logger.debug(f"t={observation.now:.3f} handshake {self.state.value} -> {state.value} on {event}")
        self.state = state
        self.deadline = observation.now + RESPONSE_TIMEOUT
        self.attacker.record(observation, state.value, event, self.depth)


def _next_after(scheduled: float, period: float, now: float) -> float:
    while scheduled <= now:
        scheduled += period
    return scheduled
