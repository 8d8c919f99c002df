import numpy as np
import pytest

from pyqiemi.circuit import InterferenceSpec, SystemParams
from pyqiemi.exceptions import InvalidInterference, InvalidSystemParams
from pyqiemi.signal import Trace


def test_typical_defaults():
    p = SystemParams()
    assert (p.r_eq, p.r_cable, p.z_ad, p.c_bus, p.f_p) == (5.0, 0.1, 0.01, 50e-6, 140e3)


@pytest.mark.parametrize("overrides", [dict(duty=0), dict(duty=1.2), dict(f_p=100e3), dict(f_p=210e3),
                                       dict(mutual=11e-6), dict(c_bus=0), dict(v_ad=-1), dict(z_ad=-0.1)])
def test_invariants_rejected(overrides):
    with pytest.raises(InvalidSystemParams):
        SystemParams(**overrides)


def test_ideal_source_allowed():
    assert SystemParams(z_ad=0).z_ad == 0


@pytest.mark.parametrize("m_i", [1.0, 1.5, -0.1])
def test_interference_depth_rejected(m_i):
    with pytest.raises(InvalidInterference):
        InterferenceSpec(m_i=m_i, f_i=1e3)


def test_arbitrary_waveform_normalized():
    spec = InterferenceSpec(m_i=0.3, waveform=Trace(1000, [0.0, 2.0, -4.0]))
    assert np.max(np.abs(spec.waveform.samples)) == 1.0
    assert not spec.is_sine


def test_sine_waveform_samples():
    w = InterferenceSpec(m_i=0.1, f_i=250).normalized_waveform(0.004, 1000)
    assert np.allclose(w, [0, 1, 0, -1], atol=1e-12)
