from pyqiemi.config.profiles import DEFAULT_PROFILES, DEMOS_DIR, PROFILES_ENV, ProfileLibrary, read_yaml
