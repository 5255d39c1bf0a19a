"""Wearable accelerometer model: timestamped 3-axis raw-count sample streams.

Samples carry 10-bit ADC counts (0..1023) at a default 50 Hz rate. Traces
round-trip through a plain CSV format, and a seeded generator synthesizes the
three wrist gestures the classifier distinguishes, with per-axis statistics
matched to the reference captures below.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from random import Random

COUNT_MIN = 0
COUNT_MAX = 1023  # 10-bit ADC
SAMPLE_PERIOD_MS = 20  # 50 Hz

TRACE_HEADER = "t_ms,x,y,z"

# Reference captures from the wrist-worn sensor: raw counts seen on the active
# axis during vertical wrist motion (z axis), horizontal wrist motion (y axis),
# and idle wear (any axis). They calibrate the synthetic generator and ship as
# demo fixtures (see wristlink.demo).
VERTICAL_Z_COUNTS = (
    277, 279, 282, 284, 265, 277, 261, 274, 269,
    276, 270, 280, 270, 267, 268, 279, 272,
)
HORIZONTAL_Y_COUNTS = (
    360, 363, 374, 379, 367, 326, 331, 356, 323,
    381, 335, 359, 339, 368, 352, 378, 372, 335,
)
IDLE_COUNTS = (
    230, 225, 228, 192, 219, 212, 217, 199, 208, 224,
    211, 184, 182, 179, 184, 169, 201, 206, 215,
)

VERTICAL_Z_RANGE = (min(VERTICAL_Z_COUNTS), max(VERTICAL_Z_COUNTS))
HORIZONTAL_Y_RANGE = (min(HORIZONTAL_Y_COUNTS), max(HORIZONTAL_Y_COUNTS))
IDLE_RANGE = (min(IDLE_COUNTS), max(IDLE_COUNTS))


class GestureKind(Enum):
    """Hand-wrist motion label for a trace segment."""

    VERTICAL_UP_DOWN = "vertical"
    HORIZONTAL = "horizontal"
    OTHER = "other"


class TraceFormatError(ValueError):
    """A trace file violates the CSV trace format."""


@dataclass(frozen=True)
class AccelSample:
    """One timestamped 3-axis reading in raw counts."""

    t: int
    x: int
    y: int
    z: int

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"t must be non-negative, got {self.t}")
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not COUNT_MIN <= v <= COUNT_MAX:
                raise ValueError(
                    f"{name}={v} outside {COUNT_MIN}..{COUNT_MAX}"
                )


@dataclass(frozen=True)
class Trace:
    """Ordered sample sequence with an optional gesture label.

    The label and generator seed are in-memory annotations; the CSV file
    format persists samples only.
    """

    samples: tuple[AccelSample, ...]
    label: GestureKind | None = None
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        prev = -1
        for s in self.samples:
            if s.t <= prev:
                raise ValueError(
                    f"timestamps must be strictly increasing: {s.t} after {prev}"
                )
            prev = s.t
        if self.label is not None and not self.samples:
            raise ValueError("a labeled trace must be non-empty")

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __getitem__(self, i):
        return self.samples[i]


def load_trace(path, label: GestureKind | None = None) -> Trace:
    """Parse a CSV trace file (`t_ms,x,y,z` header, one sample per row).

    An empty file yields an empty trace. Errors report the offending data
    row as a 1-based line number. The optional label is attached in memory;
    the file carries none.
    """
    path = Path(path)
    lines = path.read_text(encoding="ascii").splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        return Trace((), label=label)
    if lines[0] != TRACE_HEADER:
        raise TraceFormatError(f"{path}: missing '{TRACE_HEADER}' header line")

    samples = []
    prev_t = -1
    for row, line in enumerate(lines[1:], start=1):
        parts = line.split(",")
        if len(parts) != 4:
            raise TraceFormatError(
                f"{path}: line {row}: expected 4 comma-separated integers, got {line!r}"
            )
        try:
            t, x, y, z = (int(p) for p in parts)
        except ValueError:
            raise TraceFormatError(
                f"{path}: line {row}: expected 4 comma-separated integers, got {line!r}"
            ) from None
        if t < 0:
            raise TraceFormatError(
                f"{path}: line {row}: t_ms must be non-negative, got {t}"
            )
        if t <= prev_t:
            raise TraceFormatError(
                f"{path}: line {row}: t_ms {t} not greater than previous {prev_t}"
            )
        for name, v in (("x", x), ("y", y), ("z", z)):
            if not COUNT_MIN <= v <= COUNT_MAX:
                raise TraceFormatError(
                    f"{path}: line {row}: {name}={v} outside {COUNT_MIN}..{COUNT_MAX}"
                )
        samples.append(AccelSample(t=t, x=x, y=y, z=z))
        prev_t = t
    return Trace(tuple(samples), label=label)


def save_trace(trace: Trace, path) -> None:
    """Write a trace as CSV; reloading reproduces the samples exactly."""
    path = Path(path)
    rows = [TRACE_HEADER]
    rows.extend(f"{s.t},{s.x},{s.y},{s.z}" for s in trace.samples)
    path.write_text("\n".join(rows) + "\n", encoding="ascii")


_GESTURE_AXIS_RANGES = {
    GestureKind.VERTICAL_UP_DOWN: (IDLE_RANGE, IDLE_RANGE, VERTICAL_Z_RANGE),
    GestureKind.HORIZONTAL: (IDLE_RANGE, HORIZONTAL_Y_RANGE, IDLE_RANGE),
    GestureKind.OTHER: (IDLE_RANGE, IDLE_RANGE, IDLE_RANGE),
}


def generate_gesture(kind: GestureKind | str, n: int, seed: int) -> Trace:
    """Synthesize a labeled gesture trace, deterministic in (kind, n, seed).

    The gesture's active axis draws uniformly from the reference capture
    range for that motion; inactive axes draw from the idle range. Samples
    are spaced SAMPLE_PERIOD_MS apart starting at t=0.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    kind = GestureKind(kind)
    rx, ry, rz = _GESTURE_AXIS_RANGES[kind]
    rng = Random(seed)
    samples = tuple(
        AccelSample(
            t=i * SAMPLE_PERIOD_MS,
            x=rng.randint(*rx),
            y=rng.randint(*ry),
            z=rng.randint(*rz),
        )
        for i in range(n)
    )
    return Trace(samples, label=kind, seed=seed)
