import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

import numpy as np

from pyqiemi.charger.charger_action import SILENCE, ChargerAction, DemodEvent, EventKind
from pyqiemi.charger.charger_profile import ChargerProfile
from pyqiemi.charger.charger_state import ChargerState, Phase, PidState, Protocol, TerminationReason, Timers
from pyqiemi.circuit import SystemParams, max_duty_for_power, transmitted_power
from pyqiemi.codec import ACK, NAK, FskResponse, PacketKind, QiPacket
from pyqiemi.codec.packet import HEADERS, HALF_WATT_UNITS, SRQ_END_NEGOTIATION, SRQ_GUARANTEED_POWER

logger = logging.getLogger(__name__)

Transition = Tuple[ChargerState, List[ChargerAction]]


@dataclass(frozen=True)
class Sensing:
    """
    Measurements the charger takes itself during a tick.

    Args:
        measured_q (float): Q-factor of the pad measured while probing, None when not measured
        bus_alarm (bool): The bus-noise monitor asks for a shutdown
    """
    measured_q: Optional[float] = None
    bus_alarm: bool = False


class Charger(object):
    """
    Qi power transmitter. `tick` is a pure transition function: the same state, dt and event
    always produce the same new state and actions.
    """

    def __init__(self, profile: ChargerProfile, params: SystemParams = None):
        self.profile = profile
        self.params = (params or SystemParams()).with_adapter_voltage(profile.adapter_voltage)
        self.baseline_duty_cap = max(profile.min_duty,
                                     max_duty_for_power(self.params, profile.baseline_power_limit))

    def initial_state(self) -> ChargerState:
        return ChargerState(duty=self.profile.ping_duty, f_p=self.params.f_p, measured_q=self.profile.empty_pad_q)

    def duty_cap(self, state: ChargerState) -> float:
        return self.baseline_duty_cap if state.protocol == Protocol.Baseline else 1.0

    def estimate_power(self, state: ChargerState) -> float:
        if not state.power_on:
            return 0.0
        return transmitted_power(self.params.with_duty(state.duty))

    def tick(self, state: ChargerState, dt: float, event: DemodEvent = SILENCE,
             sensing: Sensing = None) -> Transition:
        """
        Advance the charger by one tick

        Args:
            state (ChargerState): Current state
            dt (float): Tick length in seconds
            event (DemodEvent): What the demodulator produced during this tick
            sensing (Sensing): Measurements taken during this tick

        Returns:
            Tuple[ChargerState, List[ChargerAction]]: New state and the actions to carry out

        Raises:
            ValueError: If dt is not positive

        """
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        sensing = sensing or Sensing()
        state = replace(state, now=state.now + dt)
        if sensing.measured_q is not None:
            state = replace(state, measured_q=sensing.measured_q)

        if sensing.bus_alarm and state.power_on:
            new_state, actions = self._terminate(state, TerminationReason.BusNoise)
        elif self._ends_power_transfer(state, event):
            new_state, actions = self._terminate(state, TerminationReason.Ept)
        else:
            handler = {
                Phase.Ping: self._ping,
                Phase.Configuration: self._configuration,
                Phase.Negotiation: self._negotiation,
                Phase.PowerTransfer: self._power_transfer,
                Phase.Terminated: self._terminated,
            }[state.phase]
            new_state, actions = handler(state, event)

        if new_state.phase != state.phase:
            logger.debug(f"t={new_state.now:.3f} {state.phase.value} -> {new_state.phase.value} on {event.label}")
        new_state = replace(new_state, transmitted_power_estimate=self.estimate_power(new_state))
        return new_state, actions

    @staticmethod
    def _ends_power_transfer(state: ChargerState, event: DemodEvent) -> bool:
        live = state.power_on and state.phase != Phase.Terminated
        return live and event.kind == EventKind.Packet and event.packet.kind == PacketKind.EPT

    def _ping(self, state: ChargerState, event: DemodEvent) -> Transition:
        timers = state.timers
        if not state.power_on:
            if state.now < timers.next_ping:
                return state, []
            timers = replace(timers, sig_deadline=state.now + self.profile.sig_timeout,
                             next_ping=state.now + self.profile.ping_interval)
            state = replace(state, power_on=True, duty=self.profile.ping_duty, timers=timers)
            return state, [ChargerAction.apply_power(state.duty)]

        if self._is(event, PacketKind.SIG) and state.now <= timers.sig_deadline:
            timers = replace(timers, sig_deadline=float("inf"),
                             phase_deadline=state.now + self.profile.config_timeout)
            return replace(state, phase=Phase.Configuration, timers=timers), []
        if state.now > timers.sig_deadline:
            return replace(state, power_on=False), [ChargerAction.apply_power(None)]
        return state, []

    def _configuration(self, state: ChargerState, event: DemodEvent) -> Transition:
        if self._is(event, PacketKind.ID):
            return replace(state, identified=True, timers=self._refresh_phase(state)), []
        if self._is(event, PacketKind.CFG) and state.identified:
            if event.packet.neg_bit:
                timers = replace(state.timers, phase_deadline=state.now + self.profile.negotiation_timeout)
                return replace(state, phase=Phase.Negotiation, timers=timers), []
            return self._start_power_transfer(state, Protocol.Baseline)
        if state.now > state.timers.phase_deadline:
            return self._terminate(state, TerminationReason.ConfigTimeout)
        return state, []

    def _negotiation(self, state: ChargerState, event: DemodEvent) -> Transition:
        if event.kind != EventKind.Packet:
            if state.now > state.timers.phase_deadline:
                return self._terminate(state, TerminationReason.NegotiationTimeout)
            return state, []

        packet = event.packet
        state = replace(state, timers=self._refresh_phase(state, self.profile.negotiation_timeout))
        if packet.kind == PacketKind.FOD:
            response = self.fod_prepower(state, packet)
            return replace(state, fod_acked=response == ACK), [ChargerAction.send(response)]
        if packet.kind == PacketKind.GRQ:
            return state, [ChargerAction.send(self._general_response(packet))]
        if packet.kind == PacketKind.SRQ and packet.request == SRQ_GUARANTEED_POWER:
            watts = packet.request_value / HALF_WATT_UNITS
            if watts <= self.profile.rated_power:
                return replace(state, guaranteed_power=watts), [ChargerAction.send(ACK)]
            return state, [ChargerAction.send(NAK)]
        if packet.kind == PacketKind.SRQ and packet.request == SRQ_END_NEGOTIATION:
            if not state.fod_acked:
                return state, [ChargerAction.send(NAK)]
            state, actions = self._start_power_transfer(state, Protocol.Extended)
            return state, [ChargerAction.send(ACK)] + actions
        return state, []

    def _power_transfer(self, state: ChargerState, event: DemodEvent) -> Transition:
        actions = []
        if self._is(event, PacketKind.CE):
            duty, pid = self.pid_update(state, event.packet.control_error)
            timers = replace(state.timers, ce_deadline=state.now + self.profile.ce_timeout)
            state = replace(state, duty=duty, pid=pid, timers=timers)
            actions.append(ChargerAction.apply_power(duty))
        elif self._is(event, PacketKind.RP):
            state = replace(state, timers=replace(state.timers, rp_deadline=state.now + self.profile.rp_timeout))
            reason = self.fod_inpower(state, event.packet)
            if reason is not None:
                return self._terminate(state, reason)

        reason = self.timeout_check(state, state.now)
        if reason is not None:
            return self._terminate(state, reason)
        return state, actions

    def _terminated(self, state: ChargerState, event: DemodEvent) -> Transition:
        if state.now < state.timers.restart_at:
            return state, []
        logger.debug(f"t={state.now:.3f} cool-down over, pinging again")
        return replace(self.initial_state(), now=state.now, measured_q=state.measured_q,
                       timers=Timers(next_ping=state.now)), []

    def pid_update(self, state: ChargerState, ce: int) -> Tuple[float, PidState]:
        """
        Run the PID iterations for one received control error

        Args:
            state (ChargerState): State in power transfer
            ce (int): Signed control error in [-128, 127]

        Returns:
            Tuple[float, PidState]: New duty cycle in [min_duty, cap] and the updated controller state

        """
        profile = self.profile
        error = ce / 128
        duty, integrator = state.duty, state.pid.integrator
        cap = self.duty_cap(state)
        for _ in range(profile.pid_iterations):
            integrator = profile.integrator_decay * integrator + error
            duty = float(np.clip(duty + profile.k_p * error + profile.k_i * integrator, profile.min_duty, cap))
        return duty, PidState(integrator=integrator, last_error=ce)

    @staticmethod
    def fod_prepower(state: ChargerState, fod: QiPacket) -> FskResponse:
        """
        ACK when the measured Q-factor reaches the reference Q-factor (in tenths) of the FOD packet.
        """
        measured_tenths = int(round(state.measured_q * 10))
        return ACK if measured_tenths >= fod.reference_q else NAK

    def fod_inpower(self, state: ChargerState, rp: QiPacket) -> Optional[TerminationReason]:
        loss = state.transmitted_power_estimate - rp.received_power / 1000
        if loss > self.profile.fod_loss_threshold:
            logger.debug(f"t={state.now:.3f} power loss {loss:.3f} W exceeds {self.profile.fod_loss_threshold} W")
            return TerminationReason.FodInPower
        return None

    @staticmethod
    def timeout_check(state: ChargerState, now: float) -> Optional[TerminationReason]:
        if now > state.timers.ce_deadline:
            return TerminationReason.CeTimeout
        if now > state.timers.rp_deadline:
            return TerminationReason.RpTimeout
        return None

    def _start_power_transfer(self, state: ChargerState, protocol: Protocol) -> Transition:
        state = replace(state, phase=Phase.PowerTransfer, protocol=protocol, pid=PidState())
        duty = min(self.profile.initial_duty, self.duty_cap(state))
        timers = replace(state.timers, phase_deadline=float("inf"),
                         ce_deadline=state.now + self.profile.ce_timeout,
                         rp_deadline=state.now + self.profile.rp_timeout)
        state = replace(state, duty=duty, timers=timers)
        logger.debug(f"t={state.now:.3f} power transfer with the {protocol.value} protocol")
        return state, [ChargerAction.apply_power(duty)]

    def _terminate(self, state: ChargerState, reason: TerminationReason) -> Transition:
        logger.debug(f"t={state.now:.3f} terminating: {reason.value}")
        timers = Timers(restart_at=state.now + self.profile.cooldown)
        state = replace(state, phase=Phase.Terminated, power_on=False, timers=timers, termination_reason=reason)
        return state, [ChargerAction.terminate(reason)]

    def _refresh_phase(self, state: ChargerState, timeout: float = None) -> Timers:
        timeout = self.profile.config_timeout if timeout is None else timeout
        return replace(state.timers, phase_deadline=state.now + timeout)

    def _general_response(self, grq: QiPacket) -> FskResponse:
        if grq.requested_header == HEADERS[PacketKind.ID]:
            return FskResponse.data(QiPacket.identification(*self.profile.charger_id))
        return NAK

    @staticmethod
    def _is(event: DemodEvent, kind: PacketKind) -> bool:
        return event.kind == EventKind.Packet and event.packet.kind == kind
