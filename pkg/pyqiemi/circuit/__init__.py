from pyqiemi.circuit.adapter import (adapter_ripple, adapter_ripple_schedule, bus_dc_voltage, bus_voltage,
                                     load_change_response, propagate_interference, scaling_factor)
from pyqiemi.circuit.countermeasure import BusMonitorMode, BusNoiseMonitor, attenuation_db, countermeasure_filter
from pyqiemi.circuit.inverter import inverter_fundamental, inverter_staircase
from pyqiemi.circuit.system_params import InterferenceSpec, SystemParams
from pyqiemi.circuit.tank import (bus_current, coil_current_amplitude, max_duty_for_power, phase_total,
                                  tank_impedance, transmitted_power, tx_coil_current)
