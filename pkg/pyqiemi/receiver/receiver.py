import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

from pyqiemi.codec import EptReason, FskKind, FskResponse, PacketKind, QiPacket
from pyqiemi.codec.packet import HEADERS
from pyqiemi.receiver.receiver_profile import Protection, ReceiverProfile, protection_check
from pyqiemi.receiver.thermal import ThermalBody, thermal_step

logger = logging.getLogger(__name__)

WAKE_POWER = 0.05


class RxPhase(Enum):
    Off = "Off"
    Negotiating = "Negotiating"
    Charging = "Charging"
    Stopped = "Stopped"


@dataclass(frozen=True)
class ReceiverState:
    thermal: ThermalBody
    phase: RxPhase = RxPhase.Off
    protections: FrozenSet[Protection] = frozenset()
    now: float = 0.0
    next_ce: float = 0.0
    next_rp: float = 0.0
    awaiting: Optional[PacketKind] = None
    requests_left: Tuple[QiPacket, ...] = ()
    received_power: float = 0.0
    heat: float = 0.0
    charging_time: float = 0.0
    charger_id: Optional[QiPacket] = None
    stop_reason: Optional[int] = None

    @property
    def temp(self) -> float:
        return self.thermal.temp

    @staticmethod
    def initial(profile: ReceiverProfile) -> "ReceiverState":
        return ReceiverState(thermal=profile.thermal)


def control_error(profile: ReceiverProfile, received_power: float) -> int:
    error = round(128 * (profile.target_power - received_power) / profile.target_power)
    return int(min(max(error, -128), 127))


def heat_input(profile: ReceiverProfile, state: ReceiverState, received_power: float) -> float:
    if Protection.P1 in state.protections or state.phase != RxPhase.Charging:
        return received_power
    return received_power - min(received_power, profile.target_power) * (1 - profile.heat_fraction)


def negotiation_requests(profile: ReceiverProfile) -> Tuple[QiPacket, ...]:
    return (QiPacket.grq(HEADERS[PacketKind.ID]), QiPacket.fod(profile.reference_q),
            QiPacket.srq_guaranteed_power(profile.target_power), QiPacket.srq_end())


def rx_step(profile: ReceiverProfile, state: ReceiverState, received_power: float, dt: float,
            response: Optional[FskResponse] = None) -> Tuple[List[QiPacket], ReceiverState]:
    """
    Advance the receiver by one tick

    Args:
        profile (ReceiverProfile): Device profile
        state (ReceiverState): Current device state
        received_power (float): Power arriving at the receiver coil during this tick, in watts
        dt (float): Tick length in seconds
        response (FskResponse): Charger response completed during this tick, if any

    Returns:
        Tuple[List[QiPacket], ReceiverState]: Packets to transmit, in order, and the new state

    Raises:
        ValueError: If dt is not positive

    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    now = state.now + dt
    heat = heat_input(profile, state, received_power)
    temp = thermal_step(state.thermal, heat, dt)
    protections = protection_check(profile, temp, state.protections)
    for protection in sorted(protections - state.protections, key=lambda p: p.value):
        logger.debug(f"{profile.name}: {protection.value} at {temp:.1f} °F")
    state = replace(state, now=now, thermal=state.thermal.at(temp), protections=protections,
                    received_power=received_power, heat=heat)

    if received_power < WAKE_POWER:
        if state.phase != RxPhase.Off:
            logger.debug(f"t={now:.3f} {profile.name}: power lost")
        return [], replace(state, phase=RxPhase.Off, awaiting=None, requests_left=())

    if Protection.P1 in protections:
        if state.phase in (RxPhase.Negotiating, RxPhase.Charging):
            return _stop(profile, state, EptReason.OverTemperature)
        if state.phase == RxPhase.Off:
            return [], state

    if state.phase == RxPhase.Off:
        return _wake_up(profile, state)
    if state.phase == RxPhase.Negotiating:
        return _negotiate(profile, state, response)
    if state.phase == RxPhase.Charging:
        return _charge(profile, state, received_power, dt)
    if state.phase == RxPhase.Stopped:
        return _repeat_ept(profile, state)
    return [], state


def _wake_up(profile: ReceiverProfile, state: ReceiverState) -> Tuple[List[QiPacket], ReceiverState]:
    startup = [QiPacket.sig(profile.signal_strength), profile.identification(),
               QiPacket.cfg(profile.neg_bit, profile.target_power)]
    if not profile.neg_bit:
        return startup, _start_charging(profile, state)
    first, *rest = negotiation_requests(profile)
    state = replace(state, phase=RxPhase.Negotiating, awaiting=first.kind, requests_left=tuple(rest))
    return startup + [first], state


def _negotiate(profile: ReceiverProfile, state: ReceiverState,
               response: Optional[FskResponse]) -> Tuple[List[QiPacket], ReceiverState]:
    if response is None:
        return [], state
    if response.kind == FskKind.NAK:
        logger.debug(f"t={state.now:.3f} {profile.name}: charger refused {state.awaiting.value}")
        return _stop(profile, state, EptReason.Unknown)
    if response.kind == FskKind.DATA and response.packet.kind == PacketKind.ID:
        state = replace(state, charger_id=response.packet)
    if not state.requests_left:
        return [], _start_charging(profile, state)
    request, *rest = state.requests_left
    return [request], replace(state, awaiting=request.kind, requests_left=tuple(rest))


def _start_charging(profile: ReceiverProfile, state: ReceiverState) -> ReceiverState:
    return replace(state, phase=RxPhase.Charging, awaiting=None, requests_left=(), charging_time=0.0,
                   next_ce=state.now + profile.ce_interval, next_rp=state.now + profile.rp_interval)


def _charge(profile: ReceiverProfile, state: ReceiverState, received_power: float,
            dt: float) -> Tuple[List[QiPacket], ReceiverState]:
    state = replace(state, charging_time=state.charging_time + dt)
    if profile.charge_complete_after is not None and state.charging_time >= profile.charge_complete_after:
        return _stop(profile, state, EptReason.ChargeComplete)
    packets = []
    # RP goes first so the charger compares it with the power it was measured at
    if state.now >= state.next_rp:
        packets.append(QiPacket.rp(received_power * 1000))
        state = replace(state, next_rp=state.next_rp + profile.rp_interval)
    if state.now >= state.next_ce:
        packets.append(QiPacket.ce(control_error(profile, received_power)))
        state = replace(state, next_ce=state.next_ce + profile.ce_interval)
    return packets, state


def _stop(profile: ReceiverProfile, state: ReceiverState, reason: int) -> Tuple[List[QiPacket], ReceiverState]:
    state = replace(state, phase=RxPhase.Stopped, awaiting=None, requests_left=(), stop_reason=reason,
                    next_ce=state.now + profile.ce_interval)
    return [QiPacket.ept(reason)], state


def _repeat_ept(profile: ReceiverProfile, state: ReceiverState) -> Tuple[List[QiPacket], ReceiverState]:
    # a device that asked to stop keeps asking while power still arrives
    if state.now < state.next_ce:
        return [], state
    return [QiPacket.ept(state.stop_reason)], replace(state, next_ce=state.next_ce + profile.ce_interval)
