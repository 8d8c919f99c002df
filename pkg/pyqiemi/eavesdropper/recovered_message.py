from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from pyqiemi.codec import FskKind, FskResponse, PacketKind, QiPacket


class Direction(Enum):
    RxToTx = "rx_to_tx"
    TxToRx = "tx_to_rx"


@dataclass(frozen=True)
class RecoveredMessage:
    """
    A packet recovered from adapter-side measurements

    Args:
        direction (Direction): rx_to_tx for ASK packets, tx_to_rx for FSK responses
        packet (QiPacket or FskResponse): What was recovered
        confidence (float): 1.0 when the checksum passed as received, 0.5 after a parity repair
        t_start (float): Start time of the transmission in seconds

    Raises:
        ValueError: If confidence is outside [0, 1]
    """
    direction: Direction
    packet: Union[QiPacket, FskResponse]
    confidence: float
    t_start: float

    def __post_init__(self):
        if not 0 <= self.confidence <= 1:
            raise ValueError(f"Confidence must be in [0, 1], got {self.confidence}")

    @property
    def kind(self) -> str:
        return self.packet.kind.value

    @property
    def identification(self) -> Optional[QiPacket]:
        packet = self.packet
        if isinstance(packet, FskResponse):
            if packet.kind != FskKind.DATA:
                return None
            packet = packet.packet
        return packet if packet.kind == PacketKind.ID else None

    def report_line(self) -> str:
        line = (f"t={self.t_start:.4f} dir={self.direction.value} kind={self.kind} "
                f"payload={self.packet.payload.hex()} conf={self.confidence:.1f}")
        identification = self.identification
        if identification is not None:
            line += f" manufacturer=0x{identification.manufacturer_code:04X}"
        return line


def format_report(messages: Iterable[RecoveredMessage]) -> str:
    return "".join(f"{message.report_line()}\n" for message in messages)
