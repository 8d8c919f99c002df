from typing import Optional

from pyqiemi.exceptions.pyqiemi_exceptions import PyQiEmiException


class InvalidTrace(PyQiEmiException):
    pass


class AliasingError(PyQiEmiException):
    def __init__(self, freq: float, sample_rate: float):
        super().__init__(f"Frequency {freq} Hz is not below the Nyquist limit of {sample_rate / 2} Hz")
        self.freq = freq
        self.sample_rate = sample_rate


class UnitMismatch(PyQiEmiException):
    def __init__(self, left: str, right: str):
        super().__init__(f"Cannot combine traces with units {left} and {right}")
        self.left = left
        self.right = right


class SampleRateMismatch(PyQiEmiException):
    def __init__(self, left: float, right: float):
        super().__init__(f"Cannot combine traces sampled at {left} Hz and {right} Hz")
        self.left = left
        self.right = right


class TraceTooShort(PyQiEmiException):
    def __init__(self, length: int, required: int):
        super().__init__(f"Trace of {length} samples is shorter than the required {required}")
        self.length = length
        self.required = required


class EnvelopeBandwidthError(PyQiEmiException):
    def __init__(self, carrier_freq: float, sample_rate: float, bandwidth: Optional[float] = None):
        if bandwidth is None:
            super().__init__(f"Carrier {carrier_freq} Hz cannot be envelope-detected at {sample_rate} Hz")
        else:
            super().__init__(f"Carrier {carrier_freq} Hz is less than ten times the {bandwidth:.0f} Hz envelope "
                             f"bandwidth")
        self.carrier_freq = carrier_freq
        self.sample_rate = sample_rate
        self.bandwidth = bandwidth


class TraceFormatError(PyQiEmiException):
    def __init__(self, path: str, reason: str):
        super().__init__(f"Malformed trace file {path}: {reason}")
        self.path = path
        self.reason = reason
