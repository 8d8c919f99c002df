from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

from pyqiemi.attacker import ActionType, AttackPlan, packet_from_spec
from pyqiemi.config import ProfileLibrary, read_yaml
from pyqiemi.exceptions import ConfigurationError, InvalidAttackPlan

DEFAULT_OUTPUTS = "pyqiemi-out"


class ScenarioKind(Enum):
    BaselineCharge = "baseline_charge"
    EavesdropDemo = "eavesdrop_demo"
    VoiceInjection = "voice_injection"
    PowerToast = "power_toast"
    FodDestruction = "fod_destruction"


NEEDS_RECEIVER = (ScenarioKind.BaselineCharge, ScenarioKind.EavesdropDemo, ScenarioKind.VoiceInjection,
                  ScenarioKind.PowerToast)


@dataclass(frozen=True)
class ScenarioConfig:
    """
    One scenario run

    Args:
        scenario (ScenarioKind): Which scenario to run
        charger (str): Charger profile name
        system (str): System profile name. Default: the charger profile's own system
        receiver (str): Receiver profile name, None for an empty pad
        objects (Tuple[str, ...]): Foreign-object profile names on the pad
        attack (AttackPlan): Attacker actions, None without an attacker
        duration (float): Simulated seconds
        seed (int): Seed of every random source
        outputs (str): Directory the report is written to
        settings (Mapping[str, Any]): Scenario-specific knobs such as a capture window

    Raises:
        ConfigurationError: If the scenario is unknown, the duration is not positive or a scenario is missing
                            the devices it needs
    """
    scenario: ScenarioKind
    charger: str = "charger_15w"
    system: Optional[str] = None
    receiver: Optional[str] = None
    objects: Tuple[str, ...] = ()
    attack: Optional[AttackPlan] = None
    duration: float = 30.0
    seed: int = 0
    outputs: str = DEFAULT_OUTPUTS
    settings: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        try:
            object.__setattr__(self, "scenario", ScenarioKind(self.scenario))
        except ValueError:
            raise ConfigurationError(f"Unknown scenario {self.scenario!r}, expected one of "
                                     f"{[kind.value for kind in ScenarioKind]}")
        if not self.duration > 0:
            raise ConfigurationError(f"Scenario duration must be positive, got {self.duration}")
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "settings", dict(self.settings))
        if self.scenario in NEEDS_RECEIVER and self.receiver is None:
            raise ConfigurationError(f"Scenario {self.scenario.value} needs a receiver")
        if self.scenario == ScenarioKind.FodDestruction and not self.objects:
            raise ConfigurationError(f"Scenario {self.scenario.value} needs at least one object on the pad")

    @property
    def name(self) -> str:
        return self.scenario.value

    def validate(self, library: ProfileLibrary) -> None:
        """
        Check that every referenced profile exists and every forged packet can be built

        Raises:
            ProfileNotFound: If a referenced profile does not exist
            InvalidAttackPlan: If a forge action names a packet that cannot be built, or a voice injection
                               has nothing to inject

        """
        if self.scenario == ScenarioKind.VoiceInjection and not any(
                action.action in (ActionType.Noise, ActionType.Voice) for action in
                (self.attack.schedule if self.attack else ())):
            raise InvalidAttackPlan(f"Scenario {self.name} needs a noise or voice action in its attack plan")
        charger = library.charger(self.charger)
        library.system(self.system or charger.system)
        if self.receiver is not None:
            library.receiver(self.receiver)
        for name in self.objects:
            library.foreign_object(name)
        for action in self.attack.schedule if self.attack else ():
            if action.action == ActionType.Forge and "packet" in action.params:
                packet_from_spec(action.params["packet"])

    def with_seed(self, seed: int) -> "ScenarioConfig":
        attack = replace(self.attack, seed=seed) if self.attack else None
        return replace(self, seed=seed, attack=attack)

    def with_outputs(self, outputs: str) -> "ScenarioConfig":
        return replace(self, outputs=outputs)

    def to_dict(self) -> Dict[str, Any]:
        data = {"scenario": self.scenario.value, "charger": self.charger, "system": self.system,
                "receiver": self.receiver, "objects": list(self.objects), "duration": self.duration,
                "seed": self.seed, "outputs": self.outputs, "settings": dict(self.settings)}
        if self.attack is not None:
            data["attack"] = self.attack.to_dict()
        return data

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "ScenarioConfig":
        if not isinstance(data, Mapping):
            raise ConfigurationError(f"A scenario configuration must be a mapping, got {type(data).__name__}")
        if "scenario" not in data:
            raise ConfigurationError("A scenario configuration needs a scenario")
        known = {"scenario", "charger", "system", "receiver", "objects", "attack", "duration", "seed", "outputs",
                 "settings"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"Unknown scenario configuration keys {unknown}")
        seed = int(data.get("seed", 0))
        attack = data.get("attack")
        if attack is not None:
            if not isinstance(attack, Mapping):
                raise ConfigurationError("The attack must be a mapping with a kind and a schedule")
            attack = AttackPlan.from_dict({"seed": seed, **attack})
        try:
            duration = float(data.get("duration", 30.0))
        except (TypeError, ValueError):
            raise ConfigurationError(f"Scenario duration must be a number, got {data.get('duration')!r}")
        return ScenarioConfig(scenario=data["scenario"], charger=str(data.get("charger", "charger_15w")),
                              system=data.get("system"), receiver=data.get("receiver"),
                              objects=tuple(data.get("objects") or ()), attack=attack, duration=duration, seed=seed,
                              outputs=str(data.get("outputs", DEFAULT_OUTPUTS)), settings=data.get("settings") or {})

    @staticmethod
    def load(path: str) -> "ScenarioConfig":
        return ScenarioConfig.from_dict(read_yaml(path))
