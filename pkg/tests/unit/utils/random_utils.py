from random import Random
from typing import List

from pyqiemi.codec import EptReason, QiPacket, payload_length
from pyqiemi.codec.packet import HEADERS, PROP_HEADERS

RANDOM_HEADERS = sorted(HEADERS.values()) + list(PROP_HEADERS)


def random_packet(rng: Random) -> QiPacket:
    header = rng.choice(RANDOM_HEADERS)
    return QiPacket(header, bytes(rng.randint(0, 0xFF) for _ in range(payload_length(header))))


def every_kind_of_packet() -> List[QiPacket]:
    return [QiPacket.sig(0x84), QiPacket.ept(EptReason.OverTemperature), QiPacket.ce(112), QiPacket.ce(-128),
            QiPacket.rp(4800), QiPacket.cfg(True, max_power=15), QiPacket.identification(0x12, 0x0042, 0x01020304),
            QiPacket.fod(0), QiPacket.grq(0x71), QiPacket.srq_guaranteed_power(15), QiPacket.srq_end(),
            QiPacket(0x18, b"\xab")]
