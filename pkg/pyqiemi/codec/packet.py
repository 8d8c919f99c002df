from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Dict, Optional

from pyqiemi.exceptions import InvalidPacket


class PacketKind(Enum):
    SIG = "SIG"
    ID = "ID"
    CFG = "CFG"
    FOD = "FOD"
    GRQ = "GRQ"
    SRQ = "SRQ"
    RP = "RP"
    CE = "CE"
    EPT = "EPT"
    PROP = "PROP"


HEADERS: Dict[PacketKind, int] = {
    PacketKind.SIG: 0x01,
    PacketKind.EPT: 0x02,
    PacketKind.CE: 0x03,
    PacketKind.RP: 0x04,
    PacketKind.GRQ: 0x07,
    PacketKind.SRQ: 0x20,
    PacketKind.FOD: 0x22,
    PacketKind.CFG: 0x51,
    PacketKind.ID: 0x71,
}
PROP_HEADERS = (0x18, 0x28)
KINDS_BY_HEADER: Dict[int, PacketKind] = {header: kind for kind, header in HEADERS.items()}
KINDS_BY_HEADER.update({header: PacketKind.PROP for header in PROP_HEADERS})

CFG_NEG_FLAG = 0x80
SRQ_END_NEGOTIATION = 0x00
SRQ_GUARANTEED_POWER = 0x01
RP_UNIT_MW = 100
HALF_WATT_UNITS = 2


class EptReason(IntEnum):
    Unknown = 0x00
    ChargeComplete = 0x01
    OverTemperature = 0x03


def payload_length(header: int) -> int:
    if header < 0x20:
        return 1
    if header < 0x80:
        return 2 + (header - 0x20) // 16
    if header < 0xE0:
        return 8 + (header - 0x80) // 8
    return 20 + (header - 0xE0) // 4


def header_kind(header: int) -> Optional[PacketKind]:
    return KINDS_BY_HEADER.get(header)


@dataclass(frozen=True)
class QiPacket:
    """
    In-band message from receiver to transmitter. The payload length is fixed by the header.

    Raises:
        InvalidPacket: If the header is unknown or the payload length does not match it
    """
    header: int
    payload: bytes

    def __post_init__(self):
        object.__setattr__(self, "payload", bytes(self.payload))
        if not 0 <= self.header <= 0xFF or header_kind(self.header) is None:
            raise InvalidPacket(f"Unknown header {self.header!r}")
        if len(self.payload) != payload_length(self.header):
            raise InvalidPacket(f"Header 0x{self.header:02X} needs {payload_length(self.header)} payload bytes, "
                                f"got {len(self.payload)}")

    @property
    def kind(self) -> PacketKind:
        return header_kind(self.header)

    @property
    def checksum(self) -> int:
        checksum = self.header
        for byte in self.payload:
            checksum ^= byte
        return checksum

    def to_bytes(self) -> bytes:
        return bytes([self.header]) + self.payload + bytes([self.checksum])

    def _require(self, kind: PacketKind) -> None:
        if self.kind != kind:
            raise InvalidPacket(f"{self.kind.value} packet has no {kind.value} fields")

    @property
    def control_error(self) -> int:
        self._require(PacketKind.CE)
        return int.from_bytes(self.payload, "big", signed=True)

    @property
    def received_power(self) -> int:
        """Received power in milliwatts."""
        self._require(PacketKind.RP)
        return self.payload[0] * RP_UNIT_MW

    @property
    def neg_bit(self) -> bool:
        self._require(PacketKind.CFG)
        return bool(self.payload[4] & CFG_NEG_FLAG)

    @property
    def max_power(self) -> float:
        self._require(PacketKind.CFG)
        return self.payload[0] / HALF_WATT_UNITS

    @property
    def reference_q(self) -> int:
        """Reference Q-factor in tenths."""
        self._require(PacketKind.FOD)
        return self.payload[1]

    @property
    def signal_strength(self) -> int:
        self._require(PacketKind.SIG)
        return self.payload[0]

    @property
    def reason(self) -> int:
        self._require(PacketKind.EPT)
        return self.payload[0]

    @property
    def requested_header(self) -> int:
        self._require(PacketKind.GRQ)
        return self.payload[0]

    @property
    def request(self) -> int:
        self._require(PacketKind.SRQ)
        return self.payload[0]

    @property
    def request_value(self) -> int:
        self._require(PacketKind.SRQ)
        return self.payload[1]

    @property
    def version(self) -> int:
        self._require(PacketKind.ID)
        return self.payload[0]

    @property
    def manufacturer_code(self) -> int:
        self._require(PacketKind.ID)
        return int.from_bytes(self.payload[1:3], "big")

    @property
    def device_identifier(self) -> int:
        self._require(PacketKind.ID)
        return int.from_bytes(self.payload[3:7], "big")

    def fields(self) -> Dict[str, int]:
        kind = self.kind
        if kind == PacketKind.SIG:
            return {"signal_strength": self.signal_strength}
        if kind == PacketKind.EPT:
            return {"reason": self.reason}
        if kind == PacketKind.CE:
            return {"control_error": self.control_error}
        if kind == PacketKind.RP:
            return {"received_power": self.received_power}
        if kind == PacketKind.CFG:
            return {"max_power": self.payload[0], "neg_bit": int(self.neg_bit)}
        if kind == PacketKind.ID:
            return {"version": self.version, "manufacturer_code": self.manufacturer_code,
                    "device_identifier": self.device_identifier}
        if kind == PacketKind.FOD:
            return {"mode": self.payload[0], "reference_q": self.reference_q}
        if kind == PacketKind.GRQ:
            return {"requested_header": self.requested_header}
        if kind == PacketKind.SRQ:
            return {"request": self.request, "value": self.request_value}
        return {}

    def __repr__(self) -> str:
        return f"{self.kind.value}({self.payload.hex()})"

    @staticmethod
    def sig(signal_strength: int) -> "QiPacket":
        return QiPacket(HEADERS[PacketKind.SIG], bytes([signal_strength]))

    @staticmethod
    def ept(reason: int = EptReason.Unknown) -> "QiPacket":
        return QiPacket(HEADERS[PacketKind.EPT], bytes([int(reason)]))

    @staticmethod
    def ce(control_error: int) -> "QiPacket":
        if not -128 <= control_error <= 127:
            raise InvalidPacket(f"Control error {control_error} is outside [-128, 127]")
        return QiPacket(HEADERS[PacketKind.CE], int(control_error).to_bytes(1, "big", signed=True))

    @staticmethod
    def rp(received_power_mw: float) -> "QiPacket":
        units = int(round(received_power_mw / RP_UNIT_MW))
        return QiPacket(HEADERS[PacketKind.RP], bytes([min(max(units, 0), 0xFF)]))

    @staticmethod
    def cfg(neg_bit: bool, max_power: float = 5.0) -> "QiPacket":
        power_units = min(int(round(max_power * HALF_WATT_UNITS)), 0xFF)
        return QiPacket(HEADERS[PacketKind.CFG], bytes([power_units, 0, 0, 0, CFG_NEG_FLAG if neg_bit else 0]))

    @staticmethod
    def identification(version: int, manufacturer_code: int, device_identifier: int) -> "QiPacket":
        payload = bytes([version]) + manufacturer_code.to_bytes(2, "big") + device_identifier.to_bytes(4, "big")
        return QiPacket(HEADERS[PacketKind.ID], payload)

    @staticmethod
    def fod(reference_q: int, mode: int = 0) -> "QiPacket":
        return QiPacket(HEADERS[PacketKind.FOD], bytes([mode, reference_q]))

    @staticmethod
    def grq(requested_header: int) -> "QiPacket":
        return QiPacket(HEADERS[PacketKind.GRQ], bytes([requested_header]))

    @staticmethod
    def srq_guaranteed_power(watts: float) -> "QiPacket":
        return QiPacket(HEADERS[PacketKind.SRQ],
                        bytes([SRQ_GUARANTEED_POWER, min(int(round(watts * HALF_WATT_UNITS)), 0xFF)]))

    @staticmethod
    def srq_end() -> "QiPacket":
        return QiPacket(HEADERS[PacketKind.SRQ], bytes([SRQ_END_NEGOTIATION, 0]))


class FskKind(Enum):
    ACK = "ACK"
    NAK = "NAK"
    ND = "ND"
    DATA = "DATA"


@dataclass(frozen=True)
class FskResponse:
    """
    Transmitter reply. DATA carries the header and payload of a Qi packet, the others carry nothing.
    """
    kind: FskKind
    payload: bytes = b""

    def __post_init__(self):
        object.__setattr__(self, "payload", bytes(self.payload))
        if self.kind != FskKind.DATA and self.payload:
            raise InvalidPacket(f"{self.kind.value} responses carry no payload")
        if self.kind == FskKind.DATA:
            if not self.payload:
                raise InvalidPacket("DATA responses carry a packet")
            QiPacket(self.payload[0], self.payload[1:])

    @property
    def packet(self) -> QiPacket:
        if self.kind != FskKind.DATA or not self.payload:
            raise InvalidPacket(f"{self.kind.value} response carries no packet")
        return QiPacket(self.payload[0], self.payload[1:])

    @staticmethod
    def data(packet: QiPacket) -> "FskResponse":
        return FskResponse(FskKind.DATA, bytes([packet.header]) + packet.payload)

    def __repr__(self) -> str:
        return f"{self.kind.value}({self.payload.hex()})" if self.payload else self.kind.value


ACK = FskResponse(FskKind.ACK)
NAK = FskResponse(FskKind.NAK)
ND = FskResponse(FskKind.ND)
