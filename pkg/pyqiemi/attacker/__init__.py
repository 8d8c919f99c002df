from pyqiemi.attacker.attack_plan import ActionType, AttackAction, AttackKind, AttackPlan, packet_from_spec
from pyqiemi.attacker.attacker import Attacker, run_fod_handshake, toast_loop
from pyqiemi.attacker.behaviours import Behaviour, BehaviourRegistry, HandshakeState, Observation, registry
from pyqiemi.attacker.injection import (InterferenceSource, NoiseSource, Stealth, WaveformSource, chirp,
                                        classify_stealth, forge_ask_packet, inject_noise, inject_voice, tone,
                                        voice_band_fraction, voice_material)
from pyqiemi.attacker.jamming import JamSource, jam_ask
