from pyqiemi.eavesdropper.ask_recovery import recover_ask, synthesize_adapter_trace
from pyqiemi.eavesdropper.filters import filter_h1, filter_h2
from pyqiemi.eavesdropper.fsk_recovery import recover_fsk, synthesize_fsk_ripple
from pyqiemi.eavesdropper.recovered_message import Direction, RecoveredMessage, format_report
