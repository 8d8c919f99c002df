from .attacker_exceptions import *
from .circuit_exceptions import *
from .codec_exceptions import *
from .config_exceptions import *
from .pyqiemi_exceptions import *
from .scenario_exceptions import *
from .signal_exceptions import *
