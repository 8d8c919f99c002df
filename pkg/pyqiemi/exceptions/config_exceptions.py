from pyqiemi.exceptions.pyqiemi_exceptions import PyQiEmiException


class ConfigurationError(PyQiEmiException):
    pass


class ProfileNotFound(ConfigurationError):
    def __init__(self, section: str, name: str):
        super().__init__(f"No {section} profile named {name}")
        self.section = section
        self.name = name


class OutputDirectoryUnwritable(ConfigurationError):
    def __init__(self, path: str):
        super().__init__(f"Output directory {path} is not writable")
        self.path = path


class ParameterNotSweepable(ConfigurationError):
    def __init__(self, parameter: str):
        super().__init__(f"Parameter {parameter} cannot be swept")
        self.parameter = parameter


class InvalidAttackPlan(ConfigurationError):
    pass
