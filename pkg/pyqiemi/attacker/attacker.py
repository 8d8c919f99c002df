import logging
from typing import TYPE_CHECKING, List, Optional, Tuple

from pyqiemi.attacker.attack_plan import ActionType, AttackAction, AttackKind, AttackPlan
from pyqiemi.attacker.behaviours import Behaviour, Observation, registry
from pyqiemi.attacker.injection import InterferenceSource
from pyqiemi.attacker.jamming import JAM_GUARD, JamSource
from pyqiemi.charger import TransitionLog
from pyqiemi.codec import QiPacket
from pyqiemi.eavesdropper import RecoveredMessage

if TYPE_CHECKING:
    from pyqiemi.channel import ChargingChannel, InBandLink

logger = logging.getLogger(__name__)

GAP_HISTORY = 0.5


class Attacker(object):
    def __init__(self, plan: AttackPlan, horizon: float, f_p_nominal: float = 140e3, log: TransitionLog = None,
                 rate: float = 100e3):
        """
        Voltage manipulator at the adapter output. It acts only through the interference it adds to the
        adapter voltage and observes only the adapter side.

        Args:
            plan (AttackPlan): Actions to carry out
            horizon (float): End of the simulation in seconds; open-ended actions stop here
            f_p_nominal (float): Operating frequency the charger is known to use, for FSK recovery
            log (TransitionLog): Log the attacker transcript is written to. Default: a new log
            rate (float): Envelope-domain sample rate of the link
        """
        self.plan = plan
        self.horizon = horizon
        self.f_p_nominal = f_p_nominal
        self.log = log if log is not None else TransitionLog()
        self.rate = rate
        self.link: Optional["InBandLink"] = None
        self.pending: List[AttackAction] = list(plan.schedule)
        self.behaviours: List[Behaviour] = []
        self.jams: List[JamSource] = []
        self.forged: List[Tuple[float, float, QiPacket]] = []
        self.recovered: List[RecoveredMessage] = []
        self.now = 0.0

    def attach(self, link: "InBandLink") -> None:
        self.link = link
        self.rate = link.rate

    def step(self, observation: Observation) -> None:
        self.now = observation.now
        while self.pending and self.pending[0].start <= self.now:
            action = self.pending.pop(0)
            logger.debug(f"t={self.now:.3f} starting {action.action.value} action")
            self.behaviours.append(registry.create(self, action))
        for behaviour in self.behaviours:
            behaviour.step(observation)
        self.behaviours = [behaviour for behaviour in self.behaviours if not behaviour.done]
        for jam in self.jams:
            jam.prune(self.now - GAP_HISTORY)

    def add_source(self, source: InterferenceSource) -> None:
        self.link.add_source(source)

    def forge(self, packet: QiPacket, depth: float, earliest: float = 0.0) -> Tuple[float, float]:
        """
        Have the link carry a forged packet, no earlier than one jamming guard from now, and keep every
        jam quiet around it

        Returns:
            Tuple[float, float]: Start and stop of the forged transmission

        """
        start, stop = self.link.forge(packet, depth, max(earliest, self.now + JAM_GUARD))
        for jam in self.jams:
            jam.exclude(start, stop)
        self.forged.append((start, stop, packet))
        return start, stop

    def jam(self, depth: float, start: float, stop: float) -> JamSource:
        jam = JamSource(start, stop, depth, seed=self.plan.seed + len(self.jams), guard=JAM_GUARD)
        for forged_start, forged_stop, _ in self.forged:
            if forged_stop + JAM_GUARD > start:
                jam.exclude(forged_start, forged_stop)
        self.jams.append(jam)
        self.add_source(jam)
        return jam

    def record(self, observation: Observation, state: str, event: str, depth: float) -> None:
        self.log.record(observation.now, f"attacker:{state}", event, depth, observation.adapter_power)

    @property
    def idle(self) -> bool:
        return not self.pending and not self.behaviours

    def __repr__(self) -> str:
        return str({"kind": self.plan.kind.value, "pending": len(self.pending), "active": len(self.behaviours),
                    "forged": len(self.forged), "jams": len(self.jams)})


def run_fod_handshake(channel: "ChargingChannel", duration: float, reference_q: int = 0, neg_bit: bool = True,
                      start: float = 0.0, **toast_params) -> List[str]:
    """
    Attach an attacker running the foreign-object handshake to `channel` and run it for `duration`
    seconds

    Returns:
        List[str]: The attacker's transcript lines

    """
    params = dict(toast_params, reference_q=reference_q, neg_bit=neg_bit)
    plan = AttackPlan(AttackKind.FodHandshake, (AttackAction(start, ActionType.FodHandshake, params),),
                      seed=channel.seed)
    return _run(channel, plan, duration)


def toast_loop(channel: "ChargingChannel", duration: float, period: float = 0.1, jam: bool = True,
               start: float = 0.0, **toast_params) -> List[str]:
    """
    Attach an attacker running the toast loop to `channel` from `start` on and run it for `duration`
    seconds

    Returns:
        List[str]: The attacker's transcript lines

    """
    params = dict(toast_params, period=period, jam=jam)
    plan = AttackPlan(AttackKind.Toast, (AttackAction(start, ActionType.Toast, params),), seed=channel.seed)
    return _run(channel, plan, duration)


def _run(channel: "ChargingChannel", plan: AttackPlan, duration: float) -> List[str]:
    attacker = Attacker(plan, horizon=channel.now + duration, f_p_nominal=channel.params.f_p)
    channel.attach_attacker(attacker)
    channel.run(duration)
    return [line for line in attacker.log.lines]
