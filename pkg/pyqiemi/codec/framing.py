"""
Byte framing of Qi packets: a preamble of ONE bits, then for every byte a start bit (0), eight data
bits LSB first, an odd parity bit and a stop bit (1). Bytes are header, payload and checksum.
"""
import logging
from typing import List, Sequence, Tuple

from pyqiemi.codec.packet import FskKind, FskResponse, QiPacket, header_kind, payload_length
from pyqiemi.exceptions import ChecksumMismatch, FramingError, ParityError, UnknownHeader

logger = logging.getLogger(__name__)

PREAMBLE_BITS = 11
BYTE_FRAME_BITS = 11
FSK_PATTERN_BITS = 8
FSK_MIN_PREAMBLE = 9


def _encode_byte(byte: int) -> List[int]:
    data = [(byte >> i) & 1 for i in range(8)]
    parity = 1 - sum(data) % 2
    return [0] + data + [parity, 1]


def frame_bytes(data: bytes, preamble: int = PREAMBLE_BITS) -> List[int]:
    bits = [1] * preamble
    for byte in data:
        bits.extend(_encode_byte(byte))
    return bits


def frame_packet(packet: QiPacket) -> List[int]:
    return frame_bytes(packet.to_bytes())


def _read_byte(bits: Sequence[int], position: int, index: int) -> Tuple[int, bool]:
    frame = bits[position:position + BYTE_FRAME_BITS]
    if len(frame) < BYTE_FRAME_BITS:
        raise FramingError(f"stream ends inside byte {index}")
    if frame[0] != 0:
        raise FramingError(f"missing start bit of byte {index}")
    if frame[10] != 1:
        raise FramingError(f"missing stop bit of byte {index}")
    value = sum(bit << i for i, bit in enumerate(frame[1:9]))
    return value, sum(frame[1:10]) % 2 == 1


def _read_frame(bits: Sequence[int], min_preamble: int, allow_trailing: bool) -> Tuple[int, List[Tuple[int, bool]]]:
    bits = [int(bit) for bit in bits]
    preamble = next((i for i, bit in enumerate(bits) if bit == 0), len(bits))
    if preamble == len(bits):
        raise FramingError("no start bit after the preamble")
    if preamble < min_preamble:
        raise FramingError(f"preamble of {preamble} bits is shorter than {min_preamble}")
    header, header_ok = _read_byte(bits, preamble, 0)
    if not header_ok:
        raise ParityError(0)
    if header_kind(header) is None:
        raise UnknownHeader(header)
    frame_bits = (2 + payload_length(header)) * BYTE_FRAME_BITS
    remaining = len(bits) - preamble
    if remaining < frame_bits:
        raise FramingError(f"stream of {remaining} bits is shorter than the {frame_bits} bit frame")
    if remaining > frame_bits and not allow_trailing:
        raise FramingError(f"{remaining - frame_bits} unexpected bits after the frame")
    rest = [_read_byte(bits, preamble + i * BYTE_FRAME_BITS, i) for i in range(1, frame_bits // BYTE_FRAME_BITS)]
    return header, rest


def _checked_packet(header: int, body: List[int]) -> QiPacket:
    packet = QiPacket(header, bytes(body[:-1]))
    if packet.checksum != body[-1]:
        raise ChecksumMismatch(packet.checksum, body[-1])
    return packet


def parse_packet(bits: Sequence[int], min_preamble: int = PREAMBLE_BITS, allow_trailing: bool = False) -> QiPacket:
    """
    Parse a framed bit stream back into a packet

    Args:
        bits (Sequence[int]): Preamble and byte frames
        min_preamble (int): Fewest preamble bits accepted. Default: 11
        allow_trailing (bool): Ignore bits after the frame instead of rejecting them. Default: False

    Returns:
        QiPacket: The parsed packet

    Raises:
        FramingError: If the preamble, a start or stop bit or the stream length is wrong
        ParityError: If a byte fails its odd parity check
        UnknownHeader: If the header byte names no known packet
        ChecksumMismatch: If the checksum byte does not match the header and payload

    """
    header, rest = _read_frame(bits, min_preamble, allow_trailing)
    for index, (_, parity_ok) in enumerate(rest, start=1):
        if not parity_ok:
            raise ParityError(index)
    return _checked_packet(header, [value for value, _ in rest])


def parse_with_repair(bits: Sequence[int], min_preamble: int = PREAMBLE_BITS,
                      allow_trailing: bool = False) -> Tuple[QiPacket, bool]:
    """
    Like parse_packet, but a single payload or checksum byte with a parity error is rebuilt from the
    checksum when the rebuilt byte differs from the received one in exactly one bit.

    Returns:
        Tuple[QiPacket, bool]: The packet and whether it was repaired

    """
    header, rest = _read_frame(bits, min_preamble, allow_trailing)
    failed = [index for index, (_, parity_ok) in enumerate(rest) if not parity_ok]
    values = [value for value, _ in rest]
    if not failed:
        return _checked_packet(header, values), False
    if len(failed) > 1:
        raise ParityError(failed[1] + 1)
    bad = failed[0]
    rebuilt = header
    for index, value in enumerate(values):
        if index != bad:
            rebuilt ^= value
    if bin(rebuilt ^ values[bad]).count("1") != 1:
        raise ParityError(bad + 1)
    values[bad] = rebuilt
    logger.debug(f"Repaired byte {bad + 1} of packet with header 0x{header:02X}")
    return _checked_packet(header, values), True


def parse_fsk_response(bits: Sequence[int]) -> FskResponse:
    """
    Classify recovered transmitter bits: a framed packet is DATA, eight ONE bits ACK, eight ZERO bits NAK

    Raises:
        FramingError: If the bits match none of the responses
        PacketParseError: If the bits carry a damaged DATA frame

    """
    bits = [int(bit) for bit in bits]
    preamble = next((i for i, bit in enumerate(bits) if bit == 0), len(bits))
    if FSK_MIN_PREAMBLE <= preamble < len(bits):
        return FskResponse.data(parse_packet(bits, min_preamble=FSK_MIN_PREAMBLE, allow_trailing=True))
    pattern = bits[:FSK_PATTERN_BITS]
    if len(pattern) == FSK_PATTERN_BITS and all(pattern):
        return FskResponse(FskKind.ACK)
    if len(pattern) == FSK_PATTERN_BITS and not any(pattern):
        return FskResponse(FskKind.NAK)
    raise FramingError(f"{len(bits)} bits match no FSK response")
