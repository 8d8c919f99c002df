from random import Random

import pytest

from pyqiemi.charger import Charger, ChargerProfile
from pyqiemi.circuit import SystemParams
from pyqiemi.config import ProfileLibrary
from pyqiemi.receiver import ForeignObject, ReceiverProfile, ThermalBody
from pyqiemi.scenario import ScenarioConfig, ScenarioContext, ScenarioKind, ScenarioRouter


@pytest.fixture
def rng():
    return Random(1234)


@pytest.fixture
def system_params():
    return SystemParams()


@pytest.fixture
def charger_profile():
    return ChargerProfile("charger_15w", rated_power=15, adapter_voltage=9.0)


@pytest.fixture
def charger(charger_profile, system_params):
    return Charger(charger_profile, system_params)


@pytest.fixture
def phone_profile():
    return ReceiverProfile("phone")


@pytest.fixture
def paper_clip():
    return ForeignObject("paper_clip", ThermalBody(heat_capacity=0.3, dissipation=0.015), absorption=0.6,
                         damage_temp=536.0)


@pytest.fixture
def library():
    return ProfileLibrary.load()


@pytest.fixture
def router():
    return ScenarioRouter()


@pytest.fixture
def baseline_config(tmp_path):
    return ScenarioConfig(ScenarioKind.BaselineCharge, receiver="phone", duration=30.0, outputs=str(tmp_path / "out"))


@pytest.fixture
def scenario_context(baseline_config, library):
    return ScenarioContext(baseline_config, library)
