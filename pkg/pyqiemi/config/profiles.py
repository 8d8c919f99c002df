import logging
import os
from typing import Any, Dict, List, Mapping, Optional

import yaml

from pyqiemi.charger import ChargerProfile
from pyqiemi.circuit import SystemParams
from pyqiemi.exceptions import ConfigurationError, InvalidSystemParams, ProfileNotFound
from pyqiemi.receiver import ForeignObject, ProtectionThresholds, ReceiverProfile, ThermalBody

logger = logging.getLogger(__name__)

PROFILES_ENV = "PYQIEMI_PROFILES"
PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))
DEFAULT_PROFILES = os.path.join(PACKAGE_DIR, "profiles.yaml")
DEMOS_DIR = os.path.join(PACKAGE_DIR, "demos")
SECTIONS = ("system", "charger", "receiver", "object")


def read_yaml(path: str) -> Any:
    """
    Raises:
        ConfigurationError: If the file cannot be read or is not valid YAML

    """
    try:
        with open(path) as yaml_file:
            return yaml.safe_load(yaml_file)
    except OSError as e:
        raise ConfigurationError(f"Cannot read {path}: {e}")
    except yaml.YAMLError as e:
        raise ConfigurationError(f"{path} is not valid YAML: {e}")


class ProfileLibrary(object):
    def __init__(self, sections: Mapping[str, Mapping[str, Mapping[str, Any]]] = None):
        """
        Named system, charger, receiver and foreign-object profiles

        Args:
            sections (Mapping): Raw profile entries per section name

        Raises:
            ConfigurationError: If a section is unknown or an entry is not a mapping
        """
        self.sections: Dict[str, Dict[str, Dict[str, Any]]] = {section: {} for section in SECTIONS}
        self.merge(sections or {})

    @staticmethod
    def load(path: Optional[str] = None) -> "ProfileLibrary":
        """
        The packaged profiles, with the user file merged over them. The user file is `path` when given,
        else the file named by the PYQIEMI_PROFILES environment variable.
        """
        library = ProfileLibrary(read_yaml(DEFAULT_PROFILES))
        user_path = ProfileLibrary._get_profiles_path(path)
        if user_path:
            logger.debug(f"Merging profiles from {user_path}")
            library.merge(read_yaml(user_path) or {})
        return library

    @staticmethod
    def _get_profiles_path(path: Optional[str] = None) -> Optional[str]:
        if path:
            return path
        return os.getenv(PROFILES_ENV) or None

    def merge(self, sections: Mapping[str, Any]) -> None:
        if not isinstance(sections, Mapping):
            raise ConfigurationError(f"A profile file must map section names to profiles, "
                                     f"got {type(sections).__name__}")
        for section, profiles in sections.items():
            if section not in self.sections:
                raise ConfigurationError(f"Unknown profile section {section}, expected one of {SECTIONS}")
            if not isinstance(profiles or {}, Mapping):
                raise ConfigurationError(f"Section {section} must map profile names to entries")
            for name, entry in (profiles or {}).items():
                if not isinstance(entry, Mapping):
                    raise ConfigurationError(f"{section} profile {name} must be a mapping")
                self.sections[section][str(name)] = dict(entry)

    def names(self, section: str) -> List[str]:
        return sorted(self._section(section))

    def has(self, section: str, name: str) -> bool:
        return name in self._section(section)

    def system(self, name: str) -> SystemParams:
        entry = self._entry("system", name)
        if "z_load" in entry:
            entry["z_load"] = _complex(entry["z_load"], name)
        try:
            return SystemParams(**entry)
        except (InvalidSystemParams, TypeError) as e:
            raise ConfigurationError(f"system profile {name}: {e}")

    def charger(self, name: str) -> ChargerProfile:
        entry = self._entry("charger", name)
        return self._build("charger", name, ChargerProfile, entry)

    def receiver(self, name: str) -> ReceiverProfile:
        entry = self._entry("receiver", name)
        if "thermal" in entry:
            entry["thermal"] = self._build("receiver", name, ThermalBody, dict(entry["thermal"]))
        if "protection_thresholds" in entry:
            entry["protection_thresholds"] = self._build("receiver", name, ProtectionThresholds,
                                                         dict(entry["protection_thresholds"]))
        return self._build("receiver", name, ReceiverProfile, entry)

    def foreign_object(self, name: str) -> ForeignObject:
        entry = self._entry("object", name)
        if "thermal" not in entry:
            raise ConfigurationError(f"object profile {name} needs a thermal body")
        entry["thermal"] = self._build("object", name, ThermalBody, dict(entry["thermal"]))
        return self._build("object", name, ForeignObject, entry)

    def _section(self, section: str) -> Dict[str, Dict[str, Any]]:
        if section not in self.sections:
            raise ConfigurationError(f"Unknown profile section {section}, expected one of {SECTIONS}")
        return self.sections[section]

    def _entry(self, section: str, name: str) -> Dict[str, Any]:
        try:
            return dict(self._section(section)[name])
        except KeyError:
            raise ProfileNotFound(section, name)

    @staticmethod
    def _build(section: str, name: str, profile_type: type, entry: Dict[str, Any]):
        if profile_type in (ChargerProfile, ReceiverProfile, ForeignObject):
            entry = {"name": name, **entry}
        try:
            return profile_type(**entry)
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"{section} profile {name}: {e}")

    def __repr__(self) -> str:
        return str({section: self.names(section) for section in SECTIONS})


def _complex(value: Any, name: str) -> complex:
    try:
        return complex(str(value).replace(" ", "")) if isinstance(value, str) else complex(value)
    except ValueError:
        raise ConfigurationError(f"system profile {name}: z_load {value!r} is not a complex number")
