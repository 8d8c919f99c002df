from pyqiemi.codec.ask import ask_demodulate, ask_modulate
from pyqiemi.codec.bmc import Level, bmc_decode, bmc_encode
from pyqiemi.codec.framing import frame_bytes, frame_packet, parse_fsk_response, parse_packet, parse_with_repair
from pyqiemi.codec.fsk import fsk_levels, fsk_modulate
from pyqiemi.codec.packet import ACK, NAK, ND, EptReason, FskKind, FskResponse, PacketKind, QiPacket, payload_length
