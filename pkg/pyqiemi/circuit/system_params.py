from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from pyqiemi.exceptions import InvalidInterference, InvalidSystemParams
from pyqiemi.signal import Trace
from pyqiemi.signal.synthesis import sample_count

QI_BAND = (110e3, 205e3)


@dataclass(frozen=True)
class SystemParams:
    """
    Circuit parameters of a charger, its adapter and the coupled receiver. Defaults are the
    `typical` profile.

    Args:
        v_ad (float): Nominal adapter DC voltage in volts
        z_ad (float): Adapter Thevenin impedance in ohms (real)
        r_cable (float): Cable resistance in ohms
        c_bus (float): Bus capacitance in farads
        r_eq (float): Steady-state equivalent load in ohms
        c_p (float): Primary resonant capacitor in farads
        c_s (float): Secondary resonant capacitor in farads
        l_p (float): Primary coil inductance in henries
        l_s (float): Secondary coil inductance in henries
        mutual (float): Mutual inductance in henries
        duty (float): Inverter duty cycle in (0, 1]
        f_p (float): Power-signal frequency in Hz, inside the Qi band
        z_load (complex): Receiver-side load in ohms

    Raises:
        InvalidSystemParams: If any of the parameter invariants does not hold
    """
    v_ad: float = 5.0
    z_ad: float = 0.01
    r_cable: float = 0.1
    c_bus: float = 50e-6
    r_eq: float = 5.0
    c_p: float = 100e-9
    c_s: float = 100e-9
    l_p: float = 10e-6
    l_s: float = 10e-6
    mutual: float = 5e-6
    duty: float = 0.5
    f_p: float = 140e3
    z_load: complex = 5.0

    def __post_init__(self):
        for name in ("v_ad", "r_cable", "c_bus", "r_eq", "c_p", "c_s", "l_p", "l_s", "mutual"):
            if not getattr(self, name) > 0:
                raise InvalidSystemParams(f"{name} must be positive, got {getattr(self, name)}")
        if self.z_ad < 0:
            raise InvalidSystemParams(f"z_ad must not be negative, got {self.z_ad}")
        if not 0 < self.duty <= 1:
            raise InvalidSystemParams(f"duty must be in (0, 1], got {self.duty}")
        if self.mutual > np.sqrt(self.l_p * self.l_s):
            raise InvalidSystemParams(f"mutual inductance {self.mutual} exceeds sqrt(l_p * l_s)")
        if not QI_BAND[0] <= self.f_p <= QI_BAND[1]:
            raise InvalidSystemParams(f"f_p {self.f_p} Hz is outside the Qi band {QI_BAND}")
        object.__setattr__(self, "z_load", complex(self.z_load))

    def with_duty(self, duty: float) -> "SystemParams":
        return replace(self, duty=duty)

    def with_adapter_voltage(self, v_ad: float) -> "SystemParams":
        return replace(self, v_ad=v_ad)


@dataclass(frozen=True, eq=False)
class InterferenceSpec:
    """
    Noise superimposed on the adapter output: v_ad(t) = V_ad * (1 + m_i * w(t)).

    Args:
        m_i (float): Interference depth, 0 <= m_i < 1
        f_i (float): Frequency of the sine waveform in Hz
        waveform (Trace): Arbitrary waveform, normalized to peak 1 on construction. A sine at f_i is used when omitted

    Raises:
        InvalidInterference: If m_i is outside [0, 1)
    """
    m_i: float
    f_i: float = 0.0
    waveform: Optional[Trace] = None

    def __post_init__(self):
        if not 0 <= self.m_i < 1:
            raise InvalidInterference(self.m_i)
        if self.waveform is not None:
            peak = np.max(np.abs(self.waveform.samples)) if len(self.waveform) else 0.0
            if peak > 0:
                object.__setattr__(self, "waveform", self.waveform.with_samples(self.waveform.samples / peak))

    @property
    def is_sine(self) -> bool:
        return self.waveform is None

    def normalized_waveform(self, duration: float, rate: float, t0: float = 0.0) -> np.ndarray:
        """
        w(t) sampled at `rate`; arbitrary waveforms are resampled by linear interpolation and are
        zero outside their own time span.
        """
        t = t0 + np.arange(sample_count(duration, rate)) / rate
        if self.is_sine:
            return np.sin(2 * np.pi * self.f_i * t)
        source = self.waveform
        return np.interp(t, source.times(), source.samples, left=0.0, right=0.0)
