"""Windowed-mean gesture classification with calibrated decision bands.

A window of samples maps to one of three verdicts: a z-axis window mean
inside the on band turns the appliance ON, else a y-axis mean inside the
off band turns it OFF, else DO NOTHING. Means stay in exact rational form
until the band comparison so boundary values are unambiguous. A debounce
stage requires N consecutive identical verdicts before acting.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from enum import Enum

from .sensor import GestureKind

# Factory default decision bands (raw z / y window means), window length,
# and consecutive-verdict count.
DEFAULT_ON_BAND = (240, 286)
DEFAULT_OFF_BAND = (323, 384)
DEFAULT_WINDOW_SIZE = 16
DEFAULT_DEBOUNCE_N = 2

_PROFILE_KEYS = ("on_band", "off_band", "window_size", "debounce_n")


class Action(Enum):
    """Classifier verdict; evaluation order is ON, then OFF, then DO_NOTHING."""

    ON = "ON"
    OFF = "OFF"
    DO_NOTHING = "DO_NOTHING"


class CalibrationError(ValueError):
    """Calibration input is unusable or produces overlapping bands."""


class ProfileError(ValueError):
    """A persisted profile document is malformed."""


def _bands_overlap(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


@dataclass(frozen=True)
class CalibrationProfile:
    """Per-action decision bands plus window and debounce parameters."""

    on_band: tuple[int, int] = DEFAULT_ON_BAND
    off_band: tuple[int, int] = DEFAULT_OFF_BAND
    window_size: int = DEFAULT_WINDOW_SIZE
    debounce_n: int = DEFAULT_DEBOUNCE_N

    def __post_init__(self):
        object.__setattr__(self, "on_band", tuple(self.on_band))
        object.__setattr__(self, "off_band", tuple(self.off_band))
        for name in ("on_band", "off_band"):
            band = getattr(self, name)
            if len(band) != 2 or band[0] > band[1]:
                raise ValueError(f"{name} must be an interval [lo, hi], got {band}")
        if _bands_overlap(self.on_band, self.off_band):
            raise ValueError(
                f"bands overlap: on_band={list(self.on_band)}"
                f" off_band={list(self.off_band)}"
            )
        if self.window_size < 1:
            raise ValueError(f"window_size must be >= 1, got {self.window_size}")
        if self.debounce_n < 1:
            raise ValueError(f"debounce_n must be >= 1, got {self.debounce_n}")


def window_mean(samples, axis: str) -> Fraction:
    """Exact arithmetic mean of one axis over a window of samples."""
    axis = axis.lower()
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    samples = list(samples)
    if not samples:
        raise ValueError("window is empty")
    return Fraction(sum(getattr(s, axis) for s in samples), len(samples))


def classify_window(samples, profile: CalibrationProfile) -> Action:
    """Map one full window to a verdict via inclusive band membership."""
    samples = list(samples)
    if len(samples) != profile.window_size:
        raise ValueError(
            f"window has {len(samples)} samples, profile expects {profile.window_size}"
        )
    z_mean = window_mean(samples, "z")
    if profile.on_band[0] <= z_mean <= profile.on_band[1]:
        return Action.ON
    y_mean = window_mean(samples, "y")
    if profile.off_band[0] <= y_mean <= profile.off_band[1]:
        return Action.OFF
    return Action.DO_NOTHING


def calibrate(
    on_traces,
    off_traces,
    margin_lo: int = 0,
    margin_hi: int = 0,
    window_size: int = DEFAULT_WINDOW_SIZE,
    debounce_n: int = DEFAULT_DEBOUNCE_N,
) -> CalibrationProfile:
    """Fit decision bands to labeled training traces.

    The on band spans the z values of the vertical-motion traces widened by
    the margins; the off band spans the y values of the horizontal-motion
    traces likewise. Raises CalibrationError when input is missing, labels
    are wrong, or the widened bands overlap (the gestures are not separable
    at these margins).
    """
    on_traces = list(on_traces)
    off_traces = list(off_traces)
    if not on_traces or not off_traces:
        raise CalibrationError("need at least one trace per label")
    for trace, want in [(t, GestureKind.VERTICAL_UP_DOWN) for t in on_traces] + [
        (t, GestureKind.HORIZONTAL) for t in off_traces
    ]:
        if trace.label is not want:
            raise CalibrationError(
                f"expected a trace labeled {want.value}, got {trace.label}"
            )
        if not len(trace):
            raise CalibrationError("training traces must be non-empty")
    z_values = [s.z for t in on_traces for s in t]
    y_values = [s.y for t in off_traces for s in t]
    on_band = (min(z_values) - margin_lo, max(z_values) + margin_hi)
    off_band = (min(y_values) - margin_lo, max(y_values) + margin_hi)
    if _bands_overlap(on_band, off_band):
        raise CalibrationError(
            f"bands overlap: on_band={list(on_band)} off_band={list(off_band)}"
        )
    return CalibrationProfile(
        on_band=on_band,
        off_band=off_band,
        window_size=window_size,
        debounce_n=debounce_n,
    )


class Debouncer:
    """Run-length gate over a verdict stream.

    An action comes out once it has held for `n` consecutive windows and
    differs from the last action emitted. DO_NOTHING only breaks runs; it is
    never emitted.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"debounce_n must be >= 1, got {n}")
        self.n = n
        self._run_action: Action | None = None
        self._run_len = 0
        self._last_emitted: Action | None = None

    def push(self, action: Action) -> Action | None:
        if action is Action.DO_NOTHING:
            self._run_action = None
            self._run_len = 0
            return None
        if action is self._run_action:
            self._run_len += 1
        else:
            self._run_action = action
            self._run_len = 1
        if self._run_len >= self.n and action is not self._last_emitted:
            self._last_emitted = action
            return action
        return None


def debounced_stream(verdicts, debounce_n: int) -> list[Action]:
    """Actions emitted by running a verdict sequence through a Debouncer."""
    gate = Debouncer(debounce_n)
    out = []
    for v in verdicts:
        emitted = gate.push(v)
        if emitted is not None:
            out.append(emitted)
    return out


def save_profile(profile: CalibrationProfile, path) -> None:
    """Persist a profile as the JSON profile document."""
    doc = {
        "on_band": list(profile.on_band),
        "off_band": list(profile.off_band),
        "window_size": profile.window_size,
        "debounce_n": profile.debounce_n,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="ascii")


def _require_int(doc_key: str, value) -> int:
    # bool is an int subclass; a profile holds plain integers only
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProfileError(f"{doc_key} must be an integer, got {value!r}")
    return value


def load_profile(path) -> CalibrationProfile:
    """Load and validate a JSON profile document; unknown keys are rejected."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="ascii"))
    except json.JSONDecodeError as exc:
        raise ProfileError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ProfileError(f"{path}: profile document must be a JSON object")
    unknown = sorted(set(doc) - set(_PROFILE_KEYS))
    if unknown:
        raise ProfileError(f"{path}: unknown profile keys: {', '.join(unknown)}")
    missing = sorted(set(_PROFILE_KEYS) - set(doc))
    if missing:
        raise ProfileError(f"{path}: missing profile keys: {', '.join(missing)}")
    bands = {}
    for key in ("on_band", "off_band"):
        band = doc[key]
        if not isinstance(band, list) or len(band) != 2:
            raise ProfileError(f"{path}: {key} must be a two-element list")
        bands[key] = (
            _require_int(f"{key}[0]", band[0]),
            _require_int(f"{key}[1]", band[1]),
        )
    try:
        return CalibrationProfile(
            on_band=bands["on_band"],
            off_band=bands["off_band"],
            window_size=_require_int("window_size", doc["window_size"]),
            debounce_n=_require_int("debounce_n", doc["debounce_n"]),
        )
    except ValueError as exc:
        raise ProfileError(f"{path}: {exc}") from None
