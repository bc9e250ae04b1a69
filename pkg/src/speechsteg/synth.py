"""Synthetic speech-like test signals.

Voiced bursts are a few harmonics of a slowly gliding pitch under a
raised-cosine envelope, separated by near-silent gaps.  Active segments are
scaled to an RMS of 0.05 of full scale (about -26 dBFS, a usual active
speech level for narrowband recordings).
"""
from __future__ import annotations

import numpy as np

from .signal_io import DEFAULT_RATE, FULL_SCALE, SpeechSignal

ACTIVE_RMS = 0.05


def _burst(rng: np.random.Generator, n: int, rate: int) -> np.ndarray:
    t = np.arange(n) / rate
    f0 = rng.uniform(100.0, 220.0)
    glide = rng.uniform(-0.15, 0.15)
    # instantaneous pitch drifts linearly by up to +-15 % across the burst
    freq = f0 * (1.0 + glide * t / max(t[-1], 1e-9))
    phase = 2 * np.pi * np.cumsum(freq) / rate
    n_harm = int(rng.integers(2, 4))
    x = np.zeros(n)
    for h in range(1, n_harm + 1):
        x += rng.uniform(0.4, 1.0) / h * np.sin(h * phase + rng.uniform(0, 2 * np.pi))
    ramp = min(n // 2, int(rng.uniform(0.02, 0.05) * rate))
    env = np.ones(n)
    if ramp > 0:
        rise = 0.5 - 0.5 * np.cos(np.pi * np.arange(ramp) / ramp)
        env[:ramp] = rise
        env[n - ramp :] = rise[::-1]
    x *= env
    return x * ACTIVE_RMS / np.sqrt(np.mean(x**2))


def speech_like(
    rng: np.random.Generator,
    duration_s: float | None = None,
    rate: int = DEFAULT_RATE,
    noise_floor: float = 1e-4,
) -> SpeechSignal:
    """One 2.5-5 s signal of alternating silence gaps and voiced bursts."""
    if duration_s is None:
        duration_s = rng.uniform(2.5, 5.0)
    total = int(round(duration_s * rate))
    out = np.zeros(total)
    pos = int(rng.uniform(0.15, 0.35) * rate)
    while pos < total:
        n = int(rng.uniform(0.2, 0.6) * rate)
        n = min(n, total - pos)
        if n > 0.05 * rate:
            out[pos : pos + n] = _burst(rng, n, rate)
        pos += n + int(rng.uniform(0.15, 0.5) * rate)
    out += rng.normal(0.0, noise_floor, total)
    pcm = np.clip(np.round(out * FULL_SCALE), -32768, 32767).astype(np.int16)
    return SpeechSignal(pcm, rate)


def corpus(n: int, seed: int = 0, rate: int = DEFAULT_RATE) -> list[SpeechSignal]:
    rng = np.random.default_rng(seed)
    return [speech_like(rng, rate=rate) for _ in range(n)]
