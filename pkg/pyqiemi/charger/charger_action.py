from dataclasses import dataclass
from enum import Enum
from typing import Optional

from pyqiemi.codec import FskResponse, QiPacket
from pyqiemi.charger.charger_state import TerminationReason


class EventKind(Enum):
    Packet = "packet"
    ParseError = "parse-error"
    Silence = "silence"


@dataclass(frozen=True)
class DemodEvent:
    """What the charger's ASK demodulator produced during one tick."""
    kind: EventKind
    packet: Optional[QiPacket] = None
    error: Optional[str] = None

    @staticmethod
    def of(packet: QiPacket) -> "DemodEvent":
        return DemodEvent(EventKind.Packet, packet=packet)

    @staticmethod
    def parse_error(error: str) -> "DemodEvent":
        return DemodEvent(EventKind.ParseError, error=error)

    @property
    def label(self) -> str:
        if self.kind == EventKind.Packet:
            return repr(self.packet)
        return self.kind.value


SILENCE = DemodEvent(EventKind.Silence)


class ActionKind(Enum):
    ApplyPower = "apply-power"
    SendResponse = "send-response"
    Terminate = "terminate"


@dataclass(frozen=True)
class ChargerAction:
    kind: ActionKind
    duty: Optional[float] = None
    response: Optional[FskResponse] = None
    reason: Optional[TerminationReason] = None

    @staticmethod
    def apply_power(duty: Optional[float]) -> "ChargerAction":
        return ChargerAction(ActionKind.ApplyPower, duty=duty)

    @staticmethod
    def send(response: FskResponse) -> "ChargerAction":
        return ChargerAction(ActionKind.SendResponse, response=response)

    @staticmethod
    def terminate(reason: TerminationReason) -> "ChargerAction":
        return ChargerAction(ActionKind.Terminate, reason=reason)
