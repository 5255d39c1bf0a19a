"""Fixed 48-bit frame codec and FIFO buffering for the wearable's radio path.

Wire layout, most significant bit first:

    bits 0..7    sync preamble, constant 0xA5
    bits 8..9    mode tag (00 idle, 01 acc, 10 ppt, 11 sync)
    bits 10..19  x axis, 10-bit unsigned
    bits 20..29  y axis, 10-bit unsigned
    bits 30..39  z axis, 10-bit unsigned
    bits 40..47  CRC-8 over bits 8..39 (poly 0x07, init 0x00, MSB first)

A bit sequence is a list of 0/1 ints. The CRC polynomial detects every
single-bit corruption of the protected region.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import IntEnum

from .sensor import COUNT_MAX, COUNT_MIN

SYNC_PATTERN = 0xA5
SYNC_BITS = 8
MODE_BITS = 2
AXIS_BITS = 10
PAYLOAD_BITS = 3 * AXIS_BITS
CRC_BITS = 8
FRAME_BITS = SYNC_BITS + MODE_BITS + PAYLOAD_BITS + CRC_BITS


class WatchMode(IntEnum):
    """Watch operating mode; the value is the 2-bit wire tag."""

    IDLE = 0
    ACC = 1
    PPT = 2
    SYNC = 3


class DecodeError(ValueError):
    """A bit sequence cannot be decoded into a frame."""


class SyncMismatchError(DecodeError):
    """The sync preamble does not match."""


class CrcMismatchError(DecodeError):
    """Integrity check failed; the transmission was corrupted."""


def crc8(data: bytes, poly: int = 0x07, init: int = 0x00) -> int:
    """CRC-8 over bytes, MSB first, no reflection, no final xor."""
    crc = init
    for byte in data:
        crc ^= byte
        for _ in range(8):
            crc = ((crc << 1) ^ poly) & 0xFF if crc & 0x80 else (crc << 1) & 0xFF
    return crc


@dataclass(frozen=True)
class CodecFrame:
    """One over-the-air packet: mode tag plus a 3-axis payload."""

    mode: WatchMode
    x: int
    y: int
    z: int

    def __post_init__(self):
        object.__setattr__(self, "mode", WatchMode(self.mode))
        for name in ("x", "y", "z"):
            v = getattr(self, name)
            if not COUNT_MIN <= v <= COUNT_MAX:
                raise ValueError(f"{name}={v} outside {COUNT_MIN}..{COUNT_MAX}")


def _protected_bytes(mode: int, x: int, y: int, z: int) -> bytes:
    # mode(2) x(10) y(10) z(10) packed MSB-first into 4 bytes
    return bytes(
        (
            (mode << 6) | (x >> 4),
            ((x & 0xF) << 4) | (y >> 6),
            ((y & 0x3F) << 2) | (z >> 8),
            z & 0xFF,
        )
    )


def serialize(frame: CodecFrame) -> list[int]:
    """Encode a frame into its 48-bit wire sequence."""
    crc = crc8(_protected_bytes(frame.mode, frame.x, frame.y, frame.z))
    word = (
        (SYNC_PATTERN << 40)
        | (frame.mode << 38)
        | (frame.x << 28)
        | (frame.y << 18)
        | (frame.z << 8)
        | crc
    )
    return [(word >> (FRAME_BITS - 1 - i)) & 1 for i in range(FRAME_BITS)]


def deserialize(bits) -> CodecFrame:
    """Decode a 48-bit wire sequence, re-verifying sync and CRC.

    Raises DecodeError on wrong length, SyncMismatchError on a bad preamble,
    and CrcMismatchError when the integrity check fails.
    """
    bits = list(bits)
    if len(bits) != FRAME_BITS:
        raise DecodeError(f"expected {FRAME_BITS} bits, got {len(bits)}")
    word = 0
    for b in bits:
        if b not in (0, 1):
            raise DecodeError(f"bit sequence contains non-bit value {b!r}")
        word = (word << 1) | int(b)
    sync = word >> 40
    if sync != SYNC_PATTERN:
        raise SyncMismatchError(f"sync 0x{sync:02X} != 0x{SYNC_PATTERN:02X}")
    mode = (word >> 38) & 0x3
    x = (word >> 28) & 0x3FF
    y = (word >> 18) & 0x3FF
    z = (word >> 8) & 0x3FF
    crc_rx = word & 0xFF
    crc_want = crc8(_protected_bytes(mode, x, y, z))
    if crc_rx != crc_want:
        raise CrcMismatchError(
            f"crc 0x{crc_rx:02X} != 0x{crc_want:02X}: corrupted transmission"
        )
    return CodecFrame(mode=WatchMode(mode), x=x, y=y, z=z)


class Fifo:
    """Bounded first-in-first-out frame buffer.

    A push onto a full buffer drops the frame and increments `dropped`;
    ordering is never violated.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.dropped = 0
        self._items: deque[CodecFrame] = deque()

    def __len__(self):
        return len(self._items)

    def push(self, frame: CodecFrame) -> bool:
        """Append a frame; returns False (and counts a drop) when full."""
        if len(self._items) >= self.capacity:
            self.dropped += 1
            return False
        self._items.append(frame)
        return True

    def pop(self) -> CodecFrame:
        """Remove and return the oldest frame; IndexError when empty."""
        if not self._items:
            raise IndexError("pop from empty fifo")
        return self._items.popleft()
