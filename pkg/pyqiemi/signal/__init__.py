from pyqiemi.signal.envelope import envelope, envelope_bandwidth, modulation_depth
from pyqiemi.signal.spectrogram import Spectrogram, dominant_frequencies, stft
from pyqiemi.signal.synthesis import constant, superimpose, synth_sine
from pyqiemi.signal.trace import Trace, Unit
from pyqiemi.signal.trace_io import read_trace, write_trace
