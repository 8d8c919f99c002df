from typing import Optional, Tuple

import numpy as np

from pyqiemi.circuit.adapter import bus_dc_voltage, propagate_interference, scaling_factor
from pyqiemi.circuit.inverter import inverter_fundamental
from pyqiemi.circuit.system_params import InterferenceSpec, SystemParams
from pyqiemi.exceptions import DegenerateCircuit
from pyqiemi.signal import Trace, Unit


def tank_impedance(p: SystemParams) -> complex:
    """
    Impedance seen by the inverter: (Z_load + Z_rs) parallel to j*w*M, in series with Z_rp

    Raises:
        DegenerateCircuit: If the parallel combination is singular

    """
    omega = 2 * np.pi * p.f_p
    z_rp = 1 / (1j * omega * p.c_p) + 1j * omega * (p.l_p - p.mutual)
    z_rs = 1 / (1j * omega * p.c_s) + 1j * omega * (p.l_s - p.mutual)
    branch = p.z_load + z_rs
    z_mutual = 1j * omega * p.mutual
    if branch == 0 and z_mutual == 0:
        raise DegenerateCircuit("both parallel branches are zero")
    if branch + z_mutual == 0:
        raise DegenerateCircuit("parallel branches resonate to an open circuit")
    return complex(branch * z_mutual / (branch + z_mutual) + z_rp)


def phase_total(p: SystemParams) -> float:
    return -float(np.angle(tank_impedance(p)))


def coil_current_amplitude(p: SystemParams) -> float:
    return 4 * bus_dc_voltage(p) * np.sin(np.pi * p.duty / 2) / (np.pi * abs(tank_impedance(p)))


def transmitted_power(p: SystemParams) -> float:
    """Real power delivered into the tank, (1/2) * V_tx * I_tx * cos(phi_total)."""
    v_tx = inverter_fundamental(bus_dc_voltage(p), p.duty)
    return 0.5 * v_tx * coil_current_amplitude(p) * np.cos(phase_total(p))


def max_duty_for_power(p: SystemParams, limit: float) -> float:
    """
    Largest duty cycle whose transmitted power does not exceed `limit` watts.
    """
    full_power = transmitted_power(p.with_duty(1.0))
    if limit >= full_power:
        return 1.0
    return float(2 / np.pi * np.arcsin(np.sqrt(max(limit, 0.0) / full_power)))


def tx_coil_current(p: SystemParams, interference: InterferenceSpec, duration: float, rate: float) -> Trace:
    """
    TX coil current i_tx(t) = I_tx * (1 + m * w(t)) * sin(2*pi*f_p*t + phi_total) with m = K * m_i

    Args:
        p (SystemParams): Circuit parameters
        interference (InterferenceSpec): Noise on the adapter output
        duration (float): Length in seconds
        rate (float): Carrier-domain sample rate

    Returns:
        Trace: Coil current in amperes

    """
    w = interference.normalized_waveform(duration, rate)
    if interference.is_sine:
        deviation = scaling_factor(p, interference.f_i) * interference.m_i * w
    else:
        deviation = propagate_interference(p, interference.m_i * w, rate)
    t = np.arange(len(w)) / rate
    carrier = np.sin(2 * np.pi * p.f_p * t + phase_total(p))
    return Trace(rate, coil_current_amplitude(p) * (1 + deviation) * carrier, Unit.Amperes)


def bus_current(p: SystemParams, i_tx: float, phi_total: Optional[float] = None) -> Tuple[float, float, float]:
    """
    DC and AC parts of the bus current drawn by the inverter

    Args:
        p (SystemParams): Circuit parameters
        i_tx (float): Coil current amplitude in amperes
        phi_total (float): Tank phase in radians. Default: computed from p

    Returns:
        Tuple[float, float, float]: (I_bus_dc, I_bus_ac, frequency of the AC part)

    Raises:
        DegenerateCircuit: If cos(phi_total) is zero

    """
    phi = phase_total(p) if phi_total is None else phi_total
    cos_phi = np.cos(phi)
    if abs(cos_phi) < 1e-12:
        raise DegenerateCircuit("cos(phi_total) is zero, the load is purely reactive")
    i_bus_dc = 2 * i_tx * np.sin(np.pi * p.duty / 2) * cos_phi / np.pi
    return float(i_bus_dc), float(i_bus_dc / cos_phi), 2 * p.f_p
