"""
The in-band medium shared by receiver, charger and attacker. Adapter interference is propagated to
the DC bus, receiver load modulation and bus deviation shape the coil-current envelope, and the
charger's demodulator analyses the envelope over every transmission window.
"""
import logging
import math
from collections import deque
from dataclasses import dataclass, replace
from typing import Deque, List, Optional, Tuple

import numpy as np

from pyqiemi.attacker.injection import InterferenceSource, WaveformSource, forge_ask_packet
from pyqiemi.charger import ChargerProfile, DemodEvent
from pyqiemi.charger.charger_action import SILENCE, EventKind
from pyqiemi.circuit import (BusNoiseMonitor, SystemParams, countermeasure_filter, load_change_response,
                             propagate_interference)
from pyqiemi.codec import FskResponse, QiPacket, ask_demodulate, ask_modulate, fsk_modulate, frame_packet, parse_packet
from pyqiemi.codec.ask import ASK_FREQUENCY
from pyqiemi.eavesdropper import synthesize_fsk_ripple
from pyqiemi.exceptions import PacketParseError
from pyqiemi.signal import Trace, Unit

logger = logging.getLogger(__name__)

RATE = 100e3
PACKET_GAP = 2e-3
WINDOW_MARGIN = 0.5e-3
HISTORY = 1.0
LEAD_IN = 5e-3
FILTER_LEAD_IN = 50e-3
RIPPLE_RATE = 2e6
RIPPLE_IDLE = 5e-3
# receptions kept from the start of the run and from its most recent past
RECEPTION_LOG = 256


@dataclass(frozen=True)
class Transmission:
    """An ASK packet on the link, between sample indices start and stop."""
    start: int
    stop: int
    packet: QiPacket
    legitimate: bool


@dataclass(frozen=True)
class Reception:
    t: float
    transmission: Transmission
    event: DemodEvent

    @property
    def intact(self) -> bool:
        return self.event.kind == EventKind.Packet and self.event.packet == self.transmission.packet


@dataclass(frozen=True)
class RenderedTick:
    """
    One tick of the link at the envelope-domain rate

    Args:
        bus_deviation (np.ndarray): Bus deviation relative to V_bus as seen by the inverter
        envelope (np.ndarray): Coil-current envelope including demodulator noise, in amperes
        power_factor (float): Share of the tick during which the inverter kept running
        browned_out (bool): The bus fell below the under-voltage lockout during the tick
        bus_alarm (bool): The bus-noise monitor asks for a shutdown
    """
    bus_deviation: np.ndarray
    envelope: np.ndarray
    power_factor: float
    browned_out: bool
    bus_alarm: bool


@dataclass
class PendingResponse:
    start: float
    stop: float
    response: FskResponse
    params: SystemParams
    delivered: bool = False


class InBandLink(object):
    def __init__(self, params: SystemParams, profile: ChargerProfile, seed: int = 0, rate: float = RATE,
                 f_ask: float = ASK_FREQUENCY):
        """
        Envelope-domain link between the devices on one charger

        Args:
            params (SystemParams): Circuit of the charger, adapter voltage included
            profile (ChargerProfile): Charger profile, for its countermeasures and front-end noise
            seed (int): Seed of the demodulator noise and ripple measurement noise
            rate (float): Envelope-domain sample rate. Default: 100 kS/s
            f_ask (float): ASK bit clock in Hz. Default: 2000
        """
        self.params = params
        self.profile = profile
        self.rate = rate
        self.f_ask = f_ask
        self.rng = np.random.default_rng(seed)
        self.monitor = BusNoiseMonitor(profile.bus_monitor, profile.bus_monitor_threshold)
        self.sources: List[InterferenceSource] = []
        self.rx_segments: List[Tuple[int, np.ndarray]] = []
        self.windows: List[Transmission] = []
        self.first_receptions: List[Reception] = []
        self.receptions: Deque[Reception] = deque(maxlen=RECEPTION_LOG)
        self.events: Deque[DemodEvent] = deque()
        self.history: Deque[Tuple[int, np.ndarray]] = deque()
        self.responses: List[PendingResponse] = []
        lead_in = FILTER_LEAD_IN if profile.countermeasure else LEAD_IN
        self.lead = np.zeros(int(round(lead_in * rate)))
        self.sample = 0
        self.rx_busy_until = 0
        self.forge_busy_until = 0
        self.observe_ripples = False
        self.stability_trips: List[float] = []
        self.collisions = 0
        self.capture_window: Optional[Tuple[float, float]] = None
        self._capture: List[Tuple[int, np.ndarray, np.ndarray, np.ndarray]] = []
        self.last_adapter = np.zeros(1)

    @property
    def now(self) -> float:
        return self.sample / self.rate

    def add_source(self, source: InterferenceSource) -> None:
        self.sources.append(source)

    def send_rx(self, packets: List[QiPacket], depth: float) -> None:
        """Queue receiver packets back to back, each PACKET_GAP after the previous one."""
        for packet in packets:
            start = max(self.sample, self.rx_busy_until)
            levels = ask_modulate(frame_packet(packet), self.f_ask, depth, self.rate).samples
            self.rx_segments.append((start, levels))
            self._open_window(Transmission(start, start + len(levels), packet, legitimate=True))
            self.rx_busy_until = start + len(levels) + self._samples(PACKET_GAP)

    def forge(self, packet: QiPacket, depth: float, earliest: float) -> Tuple[float, float]:
        """
        Superimpose the forged ASK waveform of `packet` on the adapter output, no earlier than `earliest`
        and after any forged packet already queued

        Returns:
            Tuple[float, float]: Start and stop time of the forged transmission

        """
        start = max(int(math.ceil(earliest * self.rate - 1e-9)), self.forge_busy_until, self.sample)
        waveform = forge_ask_packet(packet, depth, self.rate, self.f_ask, t0=start / self.rate)
        self.add_source(WaveformSource(waveform))
        stop = start + len(waveform)
        self._open_window(Transmission(start, stop, packet, legitimate=False))
        self.forge_busy_until = stop + self._samples(PACKET_GAP)
        return start / self.rate, stop / self.rate

    def send_response(self, response: FskResponse, now: float, params: SystemParams) -> float:
        """Start an FSK response at `now`; returns the time it ends."""
        duration = sum(seconds for _, seconds in fsk_modulate(response, params.f_p))
        self.responses.append(PendingResponse(now, now + duration, response, params))
        return now + duration

    def complete_responses(self, now: float) -> Tuple[List[FskResponse], List[Trace]]:
        """
        Responses whose transmission has ended by `now`, and the adapter ripple of those whose trailing
        idle has passed as well (only while someone observes the ripple)
        """
        finished = []
        for pending in self.responses:
            if pending.stop <= now and not pending.delivered:
                pending.delivered = True
                finished.append(pending.response)
        ripples = []
        for pending in [pending for pending in self.responses if pending.stop + RIPPLE_IDLE <= now]:
            self.responses.remove(pending)
            if self.observe_ripples:
                ripple = synthesize_fsk_ripple(pending.params, pending.response, RIPPLE_RATE, rng=self.rng,
                                               idle=RIPPLE_IDLE)
                ripples.append(replace(ripple, t0=pending.start - RIPPLE_IDLE))
        return finished, ripples

    def render(self, count: int, amplitude: float, i_bus_dc: float = 0.0) -> RenderedTick:
        """
        Render the next `count` samples

        Args:
            count (int): Samples in the tick
            amplitude (float): Coil-current amplitude while the inverter runs, zero when it is off
            i_bus_dc (float): DC bus current, only used for the adapter-voltage capture

        Returns:
            RenderedTick: The tick as seen by the inverter and the demodulator

        """
        t0 = self.now
        adapter = self._render_sources(t0, count)
        self.last_adapter = adapter
        block = np.concatenate((self.lead, adapter))
        bus = propagate_interference(self.params, block, self.rate)
        self.lead = block[count:]
        seen = bus
        if self.profile.countermeasure and np.any(block):
            seen = countermeasure_filter(Trace(self.rate, 1 + bus), self.profile.countermeasure_cutoff).samples - 1
        bus, seen = bus[-count:], seen[-count:]

        bus_alarm = self.monitor.observe(bus, t0)
        browned = 1 + seen < self.profile.uvlo_fraction
        rx = self._render_rx(count)
        envelope = amplitude * (1 + seen) * (1 + rx)
        envelope[browned] = 0.0
        if amplitude > 0:
            envelope = envelope + self.rng.normal(0.0, self.profile.sense_noise * amplitude, count)
        power_factor = 1.0 - float(np.mean(browned)) if count else 1.0
        if np.any(browned):
            logger.debug(f"t={t0:.3f} bus under-voltage lockout in {int(browned.sum())} samples")

        self.history.append((self.sample, envelope))
        if self._capturing(t0, count):
            self._capture.append((self.sample, adapter, envelope, i_bus_dc * (1 + rx) * (amplitude > 0)))
        self.sample += count
        self._prune()
        return RenderedTick(seen, envelope, power_factor, bool(np.any(browned)), bus_alarm)

    def complete_windows(self) -> List[Reception]:
        """
        Demodulate every transmission window that has fully passed, in the order the windows end, and queue
        the resulting events for the charger
        """
        margin = self._samples(WINDOW_MARGIN)
        done = sorted((window for window in self.windows if window.stop + margin <= self.sample),
                      key=lambda window: (window.stop, window.start))
        receptions = []
        for window in done:
            self.windows.remove(window)
            reception = self._demodulate(window, margin)
            if reception is not None:
                receptions.append(reception)
        return receptions

    def next_event(self) -> DemodEvent:
        return self.events.popleft() if self.events else SILENCE

    def capture(self, p: SystemParams) -> Tuple[Optional[Trace], Optional[Trace]]:
        """
        Adapter voltage and coil envelope over the capture window. The adapter voltage carries the injected
        interference and the load-change pulses of the bus current.
        """
        if not self._capture:
            return None, None
        t0 = self._capture[0][0] / self.rate
        adapter = np.concatenate([chunk[1] for chunk in self._capture])
        envelope = np.concatenate([chunk[2] for chunk in self._capture])
        load = np.concatenate([chunk[3] for chunk in self._capture])
        pulses = load_change_response(p, Trace(self.rate, load, Unit.Amperes)).samples
        voltage = Trace(self.rate, p.v_ad * (1 + adapter) + pulses, Unit.Volts, t0)
        return voltage, Trace(self.rate, envelope, Unit.Amperes, t0)

    def _demodulate(self, window: Transmission, margin: int) -> Optional[Reception]:
        segment = self._segment(window.start - margin, window.stop + margin)
        if segment is None or not np.any(segment):
            return None
        level = float(np.median(np.abs(segment)))
        try:
            bits = ask_demodulate(Trace(self.rate, segment, Unit.Amperes), self.f_ask,
                                  noise=self.profile.sense_noise * level)
            event = DemodEvent.of(parse_packet(bits, allow_trailing=True))
        except PacketParseError as error:
            event = DemodEvent.parse_error(str(error))
        reception = Reception(window.stop / self.rate, window, event)
        if len(self.first_receptions) < RECEPTION_LOG:
            self.first_receptions.append(reception)
        self.receptions.append(reception)
        self.events.append(event)
        if window.legitimate and not reception.intact:
            self.stability_trips.append(reception.t)
            if event.kind == EventKind.Packet:
                self.collisions += 1
                logger.warning(f"t={reception.t:.3f} {window.packet!r} demodulated as a different valid "
                               f"packet {event.packet!r}")
        logger.debug(f"t={reception.t:.3f} {'rx' if window.legitimate else 'forged'} {window.packet!r}: {event.label}")
        return reception

    def _render_sources(self, t0: float, count: int) -> np.ndarray:
        adapter = np.zeros(count)
        t1 = t0 + count / self.rate
        for source in self.sources:
            if source.start < t1 and source.stop > t0:
                adapter += source.render(t0, count, self.rate)
        return adapter

    def _render_rx(self, count: int) -> np.ndarray:
        rx = np.zeros(count)
        for start, levels in self.rx_segments:
            low, high = max(start, self.sample), min(start + len(levels), self.sample + count)
            if low < high:
                rx[low - self.sample:high - self.sample] = levels[low - start:high - start]
        return rx

    def _segment(self, start: int, stop: int) -> Optional[np.ndarray]:
        if not self.history or start < self.history[0][0]:
            return None
        chunks = [(chunk_start, samples) for chunk_start, samples in self.history
                  if chunk_start < stop and chunk_start + len(samples) > start]
        joined = np.concatenate([samples for _, samples in chunks])
        offset = start - chunks[0][0]
        return joined[offset:offset + stop - start]

    def _capturing(self, t0: float, count: int) -> bool:
        if self.capture_window is None:
            return False
        start, stop = self.capture_window
        return start <= t0 and t0 + count / self.rate <= stop + 1e-12

    def _open_window(self, window: Transmission) -> None:
        self.windows.append(window)

    def _prune(self) -> None:
        keep = self.sample - self._samples(HISTORY)
        while self.history and self.history[0][0] + len(self.history[0][1]) < keep:
            self.history.popleft()
        now, lead = self.now, len(self.lead) / self.rate
        self.sources = [source for source in self.sources if source.stop >= now - lead]
        self.rx_segments = [(start, levels) for start, levels in self.rx_segments
                            if start + len(levels) > self.sample]

    def _samples(self, seconds: float) -> int:
        return int(round(seconds * self.rate))

    def __repr__(self) -> str:
        return str({"t": self.now, "sources": len(self.sources), "windows": len(self.windows),
                    "stability_trips": len(self.stability_trips)})
