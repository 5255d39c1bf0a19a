"""Binary FSK modem over an abstract attenuating, noisy channel.

Bits map to tones (0 -> f0, 1 -> f1) with phase kept continuous across bit
boundaries. Detection is non-coherent: each bit window is correlated against
a single-bin discrete-frequency probe at each tone frequency and the larger
energy wins, ties decoding as 0. The defaults (f0 1 kHz, f1 2 kHz, 16 kHz
sampling, 16 samples per bit) place a whole number of cycles of either tone
in every bit window, so the probes are exactly orthogonal on clean input.

The channel is a scalar gain plus seeded additive white Gaussian noise;
every operation here is a pure function of its arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class ModemConfig:
    f0: float = 1000.0
    f1: float = 2000.0
    sample_rate: float = 16000.0
    samples_per_bit: int = 16
    channel_attenuation: float = 1.0
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.f0 == self.f1:
            raise ValueError("f0 and f1 must differ")
        nyquist = self.sample_rate / 2
        for name in ("f0", "f1"):
            f = getattr(self, name)
            if not 0 < f < nyquist:
                raise ValueError(f"{name}={f} must lie in (0, sample_rate/2)")
        if self.samples_per_bit < 4:
            raise ValueError(f"samples_per_bit must be >= 4, got {self.samples_per_bit}")
        if not 0 < self.channel_attenuation <= 1:
            raise ValueError("channel_attenuation must lie in (0, 1]")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")


def noise_sigma_for_snr_db(snr_db: float, amplitude: float = 1.0) -> float:
    """Noise sigma at which tone power (amplitude^2 / 2) over noise power
    equals the given SNR."""
    return math.sqrt((amplitude**2 / 2) / 10 ** (snr_db / 10))


def modulate(bits, cfg: ModemConfig) -> np.ndarray:
    """Emit a unit-amplitude continuous-phase FSK waveform for a bit sequence.

    Output length is len(bits) * samples_per_bit; the phase starts at 0 and
    advances by 2*pi*f/sample_rate per sample, where f follows the bit value.
    """
    bits = np.asarray(list(bits), dtype=np.int64)
    if bits.size == 0:
        return np.zeros(0)
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bit sequence must contain only 0 and 1")
    freqs = np.where(bits == 1, cfg.f1, cfg.f0)
    per_sample = np.repeat(freqs, cfg.samples_per_bit)
    inc = 2.0 * np.pi * per_sample / cfg.sample_rate
    phase = np.cumsum(inc) - inc  # exclusive prefix sum: first sample at phase 0
    return np.sin(phase)


def channel_apply(waveform, cfg: ModemConfig) -> np.ndarray:
    """Scale by channel_attenuation and add seeded zero-mean Gaussian noise."""
    out = np.asarray(waveform, dtype=float) * cfg.channel_attenuation
    if cfg.noise_sigma > 0:
        rng = np.random.default_rng(cfg.seed)
        out = out + rng.normal(0.0, cfg.noise_sigma, out.shape)
    return out


def demodulate(waveform, cfg: ModemConfig) -> list[int]:
    """Decide each bit by comparing single-bin tone energies at f0 and f1.

    The waveform length must be a multiple of samples_per_bit. A tie in
    energy (including an all-zero window) decodes as 0.
    """
    wave = np.asarray(waveform, dtype=float)
    spb = cfg.samples_per_bit
    if wave.size % spb:
        raise ValueError(
            f"waveform length {wave.size} not divisible by samples_per_bit {spb}"
        )
    if wave.size == 0:
        return []
    windows = wave.reshape(-1, spb)
    n = np.arange(spb)
    probe0 = np.exp(-2j * np.pi * cfg.f0 * n / cfg.sample_rate)
    probe1 = np.exp(-2j * np.pi * cfg.f1 * n / cfg.sample_rate)
    e0 = np.abs(windows @ probe0) ** 2
    e1 = np.abs(windows @ probe1) ** 2
    return [int(b) for b in e1 > e0]


def measure_ber(cfg: ModemConfig, n_bits: int) -> float:
    """Bit error rate of modulate -> channel -> demodulate on random bits.

    Deterministic in cfg.seed: the bit stream and the channel noise use
    independent substreams derived from it.
    """
    if n_bits < 1:
        raise ValueError(f"n_bits must be >= 1, got {n_bits}")
    bit_ss, noise_ss = np.random.SeedSequence(cfg.seed).spawn(2)
    bits = np.random.default_rng(bit_ss).integers(0, 2, n_bits)
    noise_cfg = replace(cfg, seed=int(noise_ss.generate_state(1, np.uint64)[0]))
    rx = channel_apply(modulate(bits, cfg), noise_cfg)
    decoded = np.asarray(demodulate(rx, cfg))
    return float(np.mean(decoded != bits))
