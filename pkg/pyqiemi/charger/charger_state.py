import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class Phase(Enum):
    Ping = "Ping"
    Configuration = "Configuration"
    Negotiation = "Negotiation"
    PowerTransfer = "PowerTransfer"
    Terminated = "Terminated"


class Protocol(Enum):
    Baseline = "Baseline"
    Extended = "Extended"
    Undecided = "Undecided"


class TerminationReason(Enum):
    Ept = "ept"
    CeTimeout = "ce-timeout"
    RpTimeout = "rp-timeout"
    FodInPower = "fod-inpower"
    ConfigTimeout = "config-timeout"
    NegotiationTimeout = "negotiation-timeout"
    BusNoise = "bus-noise"


@dataclass(frozen=True)
class PidState:
    integrator: float = 0.0
    last_error: int = 0


@dataclass(frozen=True)
class Timers:
    ce_deadline: float = math.inf
    rp_deadline: float = math.inf
    sig_deadline: float = math.inf
    phase_deadline: float = math.inf
    next_ping: float = 0.0
    restart_at: float = math.inf


@dataclass(frozen=True)
class ChargerState:
    phase: Phase = Phase.Ping
    protocol: Protocol = Protocol.Undecided
    duty: float = 0.2
    f_p: float = 140e3
    power_on: bool = False
    pid: PidState = field(default_factory=PidState)
    timers: Timers = field(default_factory=Timers)
    measured_q: float = 40.0
    guaranteed_power: float = 0.0
    transmitted_power_estimate: float = 0.0
    now: float = 0.0
    identified: bool = False
    fod_acked: bool = False
    termination_reason: Optional[TerminationReason] = None

    @property
    def extended(self) -> bool:
        return self.phase == Phase.PowerTransfer and self.protocol == Protocol.Extended
