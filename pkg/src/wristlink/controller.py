"""PIR-gated home-automation controller and the end-to-end pipeline.

The controller arms when a presence sensor fires and from then on honors
debounced classifier actions against a named appliance. `run_pipeline` wires
the whole chain over virtual time: access-point start, ACC-mode streaming of
each trace sample through the frame codec and FSK channel, Bernoulli-loss
delivery, a sliding window over delivered samples, classification, debounce,
and gated appliance switching. Everything is seeded, so identical inputs
produce byte-identical logs.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum

from .classify import Action, CalibrationProfile, Debouncer, classify_window
from .framing import CodecFrame, DecodeError, Fifo, WatchMode, deserialize, serialize
from .link import EventKind, LinkConfig, LinkEvent, LinkSimulator
from .modem import ModemConfig, channel_apply, demodulate, modulate
from .sensor import AccelSample, Trace


class PirState(Enum):
    UNARMED = "unarmed"
    ARMED = "armed"


@dataclass
class ApplianceState:
    name: str = "light"
    powered: bool = False


class HomeController:
    """Appliance state machine gated on passive-infrared presence detection.

    Arming is sticky by default; pass `arm_timeout_ms` to drop back to
    unarmed when an action arrives more than that long after the last
    trigger.
    """

    def __init__(
        self,
        appliance_name: str = "light",
        log: list[str] | None = None,
        arm_timeout_ms: int | None = None,
    ):
        self.pir = PirState.UNARMED
        self.last_trigger_t: int | None = None
        self.appliance = ApplianceState(name=appliance_name)
        self.log = log if log is not None else []
        self.arm_timeout_ms = arm_timeout_ms

    def pir_trigger(self, t: int) -> None:
        """Arm the controller; re-triggering refreshes the timestamp."""
        self.pir = PirState.ARMED
        self.last_trigger_t = t
        self.log.append(f"[t={t}] PIR TRIGGERED")

    def apply_action(self, action: Action, t: int) -> ApplianceState:
        """Honor a debounced action while armed; log real transitions only."""
        if (
            self.pir is PirState.ARMED
            and self.arm_timeout_ms is not None
            and self.last_trigger_t is not None
            and t - self.last_trigger_t > self.arm_timeout_ms
        ):
            self.pir = PirState.UNARMED
            self.log.append(f"[t={t}] PIR DISARMED")
        if self.pir is not PirState.ARMED:
            return self.appliance
        if action is Action.ON and not self.appliance.powered:
            self.appliance.powered = True
            self.log.append(f"[t={t}] APPLIANCE {self.appliance.name} -> ON")
        elif action is Action.OFF and self.appliance.powered:
            self.appliance.powered = False
            self.log.append(f"[t={t}] APPLIANCE {self.appliance.name} -> OFF")
        return self.appliance


@dataclass
class PipelineResult:
    """Outcome of one end-to-end run: final appliance state, the full
    chronological log, and per-stage counters."""

    appliance: ApplianceState
    log: list[str]
    frames_sent: int
    frames_delivered: int
    frames_lost: int
    frames_corrupted: int
    fifo_dropped: int
    windows_classified: int
    actions: list[tuple[int, Action]]
    sensor_resets: int
    events: list[LinkEvent] = field(repr=False, default_factory=list)


def run_pipeline(
    trace: Trace,
    profile: CalibrationProfile | None = None,
    link_cfg: LinkConfig | None = None,
    modem_cfg: ModemConfig | None = None,
    pir_at: int | None = 0,
    appliance_name: str = "light",
    tx_fifo_capacity: int = 64,
) -> PipelineResult:
    """Drive a trace through the complete sensing-to-appliance chain.

    Per sample: the watch queues an ACC frame, serializes it, sends the FSK
    waveform through the channel, and the decoded frame (when its integrity
    check passes) goes over the lossy link. A sliding window advances over
    delivered samples only, so losses shrink window fill instead of stalling
    progress: once window_size samples have arrived, every further delivery
    completes a window and yields a verdict for the debounce stage. `pir_at`
    is the presence-trigger time in ms; None, or a time past the end of the
    run, means the sensor never fires. Protocol violations propagate; nothing
    is silently dropped.
    """
    if len(trace) == 0:
        raise ValueError("trace is empty")
    if pir_at is not None and pir_at < 0:
        raise ValueError(f"pir_at must be non-negative, got {pir_at}")
    profile = profile if profile is not None else CalibrationProfile()
    link_cfg = link_cfg if link_cfg is not None else LinkConfig()
    modem_cfg = modem_cfg if modem_cfg is not None else ModemConfig()

    log: list[str] = []
    sim = LinkSimulator(link_cfg, log=log)
    ctrl = HomeController(appliance_name=appliance_name, log=log)
    gate = Debouncer(profile.debounce_n)
    tx_fifo = Fifo(tx_fifo_capacity)

    frames_corrupted = 0
    windows_classified = 0
    actions: list[tuple[int, Action]] = []
    window: deque[AccelSample] = deque(maxlen=profile.window_size)
    pir_pending = pir_at is not None

    def consume(events: list[LinkEvent]) -> None:
        nonlocal windows_classified
        for ev in events:
            if ev.kind is not EventKind.FRAME_DELIVERED:
                continue
            f = ev.frame
            window.append(AccelSample(t=ev.t, x=f.x, y=f.y, z=f.z))
            if len(window) < profile.window_size:
                continue
            verdict = classify_window(window, profile)
            windows_classified += 1
            log.append(f"[t={ev.t}] ACTION {verdict.value}")
            emitted = gate.push(verdict)
            if emitted is not None:
                actions.append((ev.t, emitted))
                ctrl.apply_action(emitted, ev.t)

    def advance(t: int) -> None:
        nonlocal pir_pending
        if pir_pending and pir_at <= t:
            consume(sim.run_until(max(pir_at, sim.now)))
            ctrl.pir_trigger(pir_at)
            pir_pending = False
        consume(sim.run_until(t))

    sim.ap_start()
    sim.watch_set_mode(WatchMode.ACC)

    for i, sample in enumerate(trace):
        advance(sample.t)
        frame = CodecFrame(mode=WatchMode.ACC, x=sample.x, y=sample.y, z=sample.z)
        if not tx_fifo.push(frame):
            continue  # queue overrun: frame dropped and counted by the fifo
        queued = tx_fifo.pop()
        # each frame gets its own noise stream, still fully seed-determined
        hop_cfg = replace(modem_cfg, seed=(modem_cfg.seed + i) % 2**64)
        rx_bits = demodulate(
            channel_apply(modulate(serialize(queued), modem_cfg), hop_cfg), modem_cfg
        )
        try:
            decoded = deserialize(rx_bits)
        except DecodeError:
            frames_corrupted += 1
            log.append(f"[t={sample.t}] FRAME_CORRUPTED codec integrity check failed")
            continue
        sim.transmit_sample(
            AccelSample(t=sample.t, x=decoded.x, y=decoded.y, z=decoded.z)
        )

    advance(trace.samples[-1].t + link_cfg.latency)

    return PipelineResult(
        appliance=ctrl.appliance,
        log=log,
        frames_sent=sim.sent_count,
        frames_delivered=sim.delivered_count,
        frames_lost=sim.lost_count,
        frames_corrupted=frames_corrupted,
        fifo_dropped=tx_fifo.dropped,
        windows_classified=windows_classified,
        actions=actions,
        sensor_resets=sim.acc_resets,
        events=sim.events,
    )
