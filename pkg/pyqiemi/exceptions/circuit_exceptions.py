from pyqiemi.exceptions.pyqiemi_exceptions import PyQiEmiException


class InvalidSystemParams(PyQiEmiException):
    def __init__(self, reason: str):
        super().__init__(f"Invalid system parameters: {reason}")
        self.reason = reason


class InvalidInterference(PyQiEmiException):
    def __init__(self, m_i: float):
        super().__init__(f"Interference depth {m_i} must satisfy 0 <= m_i < 1")
        self.m_i = m_i


class DegenerateCircuit(PyQiEmiException):
    def __init__(self, reason: str):
        super().__init__(f"Degenerate circuit: {reason}")
        self.reason = reason
