from pyqiemi.exceptions.pyqiemi_exceptions import PyQiEmiException


class InvalidPacket(PyQiEmiException):
    pass


class PacketParseError(PyQiEmiException):
    pass


class BmcDecodeError(PacketParseError):
    def __init__(self, bit_index: int):
        super().__init__(f"Missing boundary transition at bit {bit_index}")
        self.bit_index = bit_index


class FramingError(PacketParseError):
    def __init__(self, reason: str):
        super().__init__(f"Framing error: {reason}")
        self.reason = reason


class ParityError(PacketParseError):
    def __init__(self, byte_index: int):
        super().__init__(f"Parity error in byte {byte_index}")
        self.byte_index = byte_index


class ChecksumMismatch(PacketParseError):
    def __init__(self, expected: int, received: int):
        super().__init__(f"Checksum mismatch: expected 0x{expected:02X}, received 0x{received:02X}")
        self.expected = expected
        self.received = received


class UnknownHeader(PacketParseError):
    def __init__(self, header: int):
        super().__init__(f"Unknown packet header 0x{header:02X}")
        self.header = header


class DemodulationFailure(PacketParseError):
    def __init__(self, separation: float, noise_floor: float):
        super().__init__(f"Level separation {separation:.3g} is below 3x the noise floor {noise_floor:.3g}")
        self.separation = separation
        self.noise_floor = noise_floor
