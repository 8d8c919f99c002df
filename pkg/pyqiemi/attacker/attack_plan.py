from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Mapping, Tuple, Union

from pyqiemi.codec import QiPacket
from pyqiemi.exceptions import InvalidAttackPlan, InvalidPacket

DEPTH_PARAMS = ("m_i", "depth", "jam_depth", "forge_depth")


class AttackKind(Enum):
    VoiceInjection = "voice_injection"
    QiInjection = "qi_injection"
    Jam = "jam"
    FodHandshake = "fod_handshake"
    Toast = "toast"


class ActionType(Enum):
    Noise = "noise"
    Voice = "voice"
    Forge = "forge"
    Jam = "jam"
    Toast = "toast"
    FodHandshake = "fod_handshake"


@dataclass(frozen=True)
class AttackAction:
    """
    One timed step of an attack

    Args:
        start (float): Simulation time in seconds at which the action begins
        action (ActionType): What the attacker does
        params (Mapping[str, Any]): Action parameters such as depth, period or packet

    Raises:
        InvalidAttackPlan: If the start is negative, the action unknown or a depth outside [0, 1)
    """
    start: float
    action: ActionType
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        try:
            object.__setattr__(self, "action", ActionType(self.action))
        except ValueError:
            raise InvalidAttackPlan(f"Unknown attack action {self.action!r}")
        if self.start < 0:
            raise InvalidAttackPlan(f"Action {self.action.value} starts at negative time {self.start}")
        object.__setattr__(self, "params", dict(self.params))
        for name in DEPTH_PARAMS:
            if name in self.params and not 0 <= float(self.params[name]) < 1:
                raise InvalidAttackPlan(f"Action {self.action.value}: {name} must be in [0, 1), "
                                        f"got {self.params[name]}")

    def get(self, name: str, default: Any = None) -> Any:
        return self.params.get(name, default)

    def to_dict(self) -> Dict[str, Any]:
        return {"start": self.start, "action": self.action.value, **self.params}


@dataclass(frozen=True)
class AttackPlan:
    """
    Time-ordered schedule of attacker actions. The seed makes jamming reproducible.

    Raises:
        InvalidAttackPlan: If the kind is unknown or the actions are not time-ordered
    """
    kind: AttackKind
    schedule: Tuple[AttackAction, ...] = ()
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", AttackKind(self.kind))
        except ValueError:
            raise InvalidAttackPlan(f"Unknown attack kind {self.kind!r}")
        object.__setattr__(self, "schedule", tuple(self.schedule))
        starts = [action.start for action in self.schedule]
        if starts != sorted(starts):
            raise InvalidAttackPlan(f"Attack actions must be time-ordered, got starts {starts}")

    def with_param(self, name: str, value: Any) -> "AttackPlan":
        """Copy of the plan with `name` set on every action that already carries it."""
        schedule = tuple(replace(action, params={**action.params, name: value}) if name in action.params else action
                         for action in self.schedule)
        return replace(self, schedule=schedule)

    def has_param(self, name: str) -> bool:
        return any(name in action.params for action in self.schedule)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "seed": self.seed, "schedule": [action.to_dict() for action in self.schedule]}

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "AttackPlan":
        if "kind" not in data:
            raise InvalidAttackPlan("Attack plan needs a kind")
        schedule = []
        for entry in data.get("schedule") or []:
            entry = dict(entry)
            if "start" not in entry or "action" not in entry:
                raise InvalidAttackPlan(f"Attack action {entry} needs a start and an action")
            schedule.append(AttackAction(float(entry.pop("start")), entry.pop("action"), entry))
        return AttackPlan(data["kind"], tuple(schedule), int(data.get("seed", 0)))


PACKET_FACTORIES = {
    "sig": QiPacket.sig,
    "ept": QiPacket.ept,
    "ce": QiPacket.ce,
    "rp": QiPacket.rp,
    "fod": QiPacket.fod,
    "grq": QiPacket.grq,
    "srq_guaranteed_power": QiPacket.srq_guaranteed_power,
    "srq_end": QiPacket.srq_end,
}


def packet_from_spec(spec: Union[QiPacket, str, Mapping[str, Any]]) -> QiPacket:
    """
    Packet named in an attack plan: a QiPacket, a hex string of header and payload (`"0370"`) or a
    one-entry mapping from packet kind to value (`{"ce": 112}`, `{"srq_end": null}`)

    Raises:
        InvalidAttackPlan: If the packet cannot be built
    """
    if isinstance(spec, QiPacket):
        return spec
    try:
        if isinstance(spec, str):
            raw = bytes.fromhex(spec)
            return QiPacket(raw[0], raw[1:])
        (kind, value), = dict(spec).items()
        factory = PACKET_FACTORIES[str(kind).lower()]
        return factory() if value is None else factory(value)
    except (InvalidPacket, ValueError, TypeError, KeyError, IndexError) as error:
        raise InvalidAttackPlan(f"Cannot build a packet from {spec!r}: {error}")
