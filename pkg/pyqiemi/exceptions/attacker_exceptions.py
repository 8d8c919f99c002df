from pyqiemi.exceptions.pyqiemi_exceptions import PyQiEmiException


class VoiceBandExceeded(PyQiEmiException):
    def __init__(self, fraction: float, limit: float):
        super().__init__(f"{fraction:.1%} of the voice energy lies above {limit:.0f} Hz")
        self.fraction = fraction
        self.limit = limit
