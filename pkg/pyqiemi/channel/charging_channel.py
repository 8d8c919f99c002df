import logging
from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, Deque, List, Optional, Sequence, Tuple

import numpy as np

from pyqiemi.attacker.behaviours import Observation
from pyqiemi.channel.in_band_link import RATE, InBandLink, RenderedTick
from pyqiemi.charger import ActionKind, ChargerAction, Charger, ChargerState, Sensing, TransitionLog
from pyqiemi.circuit import bus_current, coil_current_amplitude
from pyqiemi.codec import FskResponse
from pyqiemi.receiver import ForeignObject, ReceiverProfile, ReceiverState, foreign_object_step, rx_step
from pyqiemi.signal import Trace, Unit

if TYPE_CHECKING:
    from pyqiemi.attacker import Attacker

logger = logging.getLogger(__name__)

TICK = 0.01
AMBIENT = 77.0


@dataclass(frozen=True)
class TickRecord:
    """
    Per-tick values kept for the result traces

    Args:
        t (float): End of the tick in seconds
        adapter_voltage (float): Mean adapter voltage over the tick
        coil_envelope (float): Mean coil-current envelope over the tick
        power (float): Power actually transmitted, after bus deviation and brown-out
        temperature (float): Receiver temperature, or the hottest object when there is no receiver
    """
    t: float
    adapter_voltage: float
    coil_envelope: float
    power: float
    temperature: float


class ChargingChannel(object):
    def __init__(self, charger: Charger, receiver: Optional[ReceiverProfile] = None,
                 objects: Sequence[ForeignObject] = (), seed: int = 0, dt: float = TICK, rate: float = RATE,
                 log: TransitionLog = None):
        """
        One charger with whatever lies on its pad, stepped on a shared timeline. Every tick renders the link,
        hands the demodulated event to the charger, delivers power and responses to the receiver and the
        objects, and lets an attached attacker act on what it sees at the adapter.

        Args:
            charger (Charger): The charger
            receiver (ReceiverProfile): Receiver on the pad, None for an empty pad or objects only
            objects (Sequence[ForeignObject]): Foreign objects on the pad
            seed (int): Seed of every random source in the channel
            dt (float): Tick length in seconds. Default: 10 ms
            rate (float): Envelope-domain sample rate
            log (TransitionLog): Log the charger transitions are written to. Default: a new log

        Raises:
            ValueError: If dt is not positive or does not hold a whole number of samples

        """
        count = dt * rate
        if dt <= 0 or abs(count - round(count)) > 1e-6:
            raise ValueError(f"dt must be a positive multiple of 1/{rate:g} s, got {dt}")
        self.charger = charger
        self.params = charger.params
        self.seed = seed
        self.dt = dt
        self.count = int(round(count))
        self.state: ChargerState = charger.initial_state()
        self.receiver = receiver
        self.rx_state: Optional[ReceiverState] = ReceiverState.initial(receiver) if receiver else None
        self.objects: List[ForeignObject] = list(objects)
        self.link = InBandLink(self.params, charger.profile, seed, rate)
        self.attacker: Optional["Attacker"] = None
        self.log = log if log is not None else TransitionLog()
        self.records: List[TickRecord] = []
        self.rx_responses: Deque[FskResponse] = deque()
        self.power = 0.0

    @property
    def now(self) -> float:
        return self.state.now

    def attach_attacker(self, attacker: "Attacker") -> None:
        attacker.attach(self.link)
        self.attacker = attacker
        self.link.observe_ripples = True

    def capture(self, start: float, stop: float) -> None:
        """Keep the full-rate adapter voltage and coil envelope between `start` and `stop`."""
        self.link.capture_window = (start, stop)

    def run(self, duration: float) -> None:
        for _ in range(int(round(duration / self.dt))):
            self.tick()

    def tick(self) -> ChargerState:
        amplitude, i_bus_dc = self._drive(self.state)
        rendered = self.link.render(self.count, amplitude, i_bus_dc)
        self.link.complete_windows()
        event = self.link.next_event()

        sensing = Sensing(measured_q=self._measured_q(), bus_alarm=rendered.bus_alarm)
        self.state, actions = self.charger.tick(self.state, self.dt, event, sensing)
        self._apply(actions)
        self.power = self.state.transmitted_power_estimate * rendered.power_factor

        responses, ripples = self.link.complete_responses(self.now)
        self.rx_responses.extend(responses)
        self._step_receiver()
        self.objects = [foreign_object_step(obj, self.power, self.dt) for obj in self.objects]
        if self.attacker is not None:
            self.attacker.step(Observation(self.now, self.power, tuple(ripples)))

        self.log.record(self.now, self.state.phase.value, event.label, self.state.duty,
                        self.state.transmitted_power_estimate)
        self._record(rendered)
        return self.state

    @property
    def received_fraction(self) -> float:
        """Share of the transmitted power that reaches the receiver past the objects on the pad."""
        if self.receiver is None:
            return 0.0
        absorbed = min(1.0, sum(obj.absorption for obj in self.objects))
        return self.receiver.coupling_efficiency * (1 - absorbed)

    @property
    def received_power(self) -> float:
        return self.received_fraction * self.power

    @property
    def stability_trips(self) -> List[float]:
        return self.link.stability_trips

    def traces(self) -> Tuple[Trace, Trace, Trace, Trace]:
        """
        Adapter voltage, coil envelope, transmitted power and temperature. The first two come from the
        capture window at the full rate when one was set, from the per-tick means otherwise.
        """
        rate = 1 / self.dt
        t0 = self.records[0].t if self.records else self.dt
        adapter, envelope = self.link.capture(self.params)
        if adapter is None:
            adapter = Trace(rate, [r.adapter_voltage for r in self.records], Unit.Volts, t0)
            envelope = Trace(rate, [r.coil_envelope for r in self.records], Unit.Amperes, t0)
        power = Trace(rate, [r.power for r in self.records], Unit.Watts, t0)
        temperature = Trace(rate, [r.temperature for r in self.records], Unit.Fahrenheit, t0)
        return adapter, envelope, power, temperature

    def _drive(self, state: ChargerState) -> Tuple[float, float]:
        if not state.power_on:
            return 0.0, 0.0
        p = self.params.with_duty(state.duty)
        amplitude = coil_current_amplitude(p)
        i_bus_dc, _, _ = bus_current(p, amplitude)
        return amplitude, i_bus_dc

    def _measured_q(self) -> float:
        pad = [obj.pad_q for obj in self.objects]
        if self.receiver is not None:
            pad.append(self.receiver.pad_q)
        return min(pad) if pad else self.charger.profile.empty_pad_q

    def _apply(self, actions: List[ChargerAction]) -> None:
        for action in actions:
            if action.kind == ActionKind.SendResponse:
                self.link.send_response(action.response, self.now, self.params.with_duty(self.state.duty))
            elif action.kind == ActionKind.Terminate:
                logger.info(f"t={self.now:.3f} charger terminated power transfer: {action.reason.value}")

    def _step_receiver(self) -> None:
        if self.receiver is None:
            self.rx_responses.clear()
            return
        response = self.rx_responses.popleft() if self.rx_responses else None
        packets, self.rx_state = rx_step(self.receiver, self.rx_state, self.received_power, self.dt, response)
        self.link.send_rx(packets, self.receiver.ask_depth)

    def _record(self, rendered: RenderedTick) -> None:
        if self.rx_state is not None:
            temperature = self.rx_state.temp
        elif self.objects:
            temperature = max(obj.temp for obj in self.objects)
        else:
            temperature = AMBIENT
        adapter = self.params.v_ad * (1 + float(np.mean(self.link.last_adapter)))
        self.records.append(TickRecord(self.now, adapter, float(np.mean(rendered.envelope)), self.power, temperature))

    def __repr__(self) -> str:
        return str({"t": self.now, "phase": self.state.phase.value, "duty": self.state.duty, "power": self.power,
                    "receiver": self.rx_state.phase.value if self.rx_state else None,
                    "objects": [obj.name for obj in self.objects]})
