"""Silence-interval baseline: digits encoded in the lengths of silent runs.

A silent run is a maximal stretch of samples with ``|x| / 32767 < threshold``
that lasts at least ``min_interval`` samples.  Digit ``d`` is written into
run ``i`` by deleting up to 9 trailing samples so that the run length is
``d`` modulo 10.  This is a minimal reading of length-alteration hiding,
kept here as a comparison point; it is not a faithful port of any
published implementation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InsufficientIntervals
from .signal_io import FULL_SCALE, SpeechSignal

DEFAULT_THRESHOLD = 0.01
DEFAULT_MIN_INTERVAL = 320


@dataclass(frozen=True)
class SilenceInterval:
    start: int
    length: int
    mean_abs_level: float

    @property
    def stop(self) -> int:
        return self.start + self.length


def detect_silence(
    signal: SpeechSignal,
    threshold: float = DEFAULT_THRESHOLD,
    min_interval: int = DEFAULT_MIN_INTERVAL,
) -> list[SilenceInterval]:
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie in (0, 1)")
    x = signal.samples.astype(np.int64)
    quiet = np.abs(x) / FULL_SCALE < threshold
    edges = np.diff(np.concatenate(([0], quiet.view(np.int8), [0])))
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)
    out = []
    for a, b in zip(starts.tolist(), stops.tolist()):
        if b - a >= min_interval:
            out.append(SilenceInterval(a, b - a, float(np.abs(x[a:b]).mean())))
    return out


def silence_edits(
    signal: SpeechSignal,
    digits: Sequence[int],
    threshold: float = DEFAULT_THRESHOLD,
    min_interval: int = DEFAULT_MIN_INTERVAL,
) -> list[tuple[int, int]]:
    """``(start, count)`` sample deletions, in cover coordinates, that encode ``digits``."""
    intervals = detect_silence(signal, threshold, min_interval)
    if len(digits) > len(intervals):
        raise InsufficientIntervals(
            f"{len(digits)} digits but only {len(intervals)} silent intervals"
        )
    edits = []
    for iv, d in zip(intervals, digits):
        if not 0 <= int(d) <= 9:
            raise ValueError(f"digit {d} out of range")
        cut = (iv.length - int(d)) % 10
        if iv.length - cut < min_interval:
            raise InsufficientIntervals(
                f"interval at {iv.start} ({iv.length} samples) would drop below {min_interval}"
            )
        if cut:
            edits.append((iv.stop - cut, cut))
    return edits


def apply_edits(signal: SpeechSignal, edits: Sequence[tuple[int, int]]) -> SpeechSignal:
    keep = np.ones(len(signal), dtype=bool)
    for start, count in edits:
        keep[start : start + count] = False
    return SpeechSignal(signal.samples[keep], signal.sample_rate_hz)


def restore_alignment(stego: SpeechSignal, edits: Sequence[tuple[int, int]]) -> SpeechSignal:
    """Re-insert deleted positions as zeros so stego lines up with its cover."""
    total = len(stego) + sum(c for _, c in edits)
    keep = np.ones(total, dtype=bool)
    for start, count in edits:
        keep[start : start + count] = False
    out = np.zeros(total, dtype=np.int16)
    out[keep] = stego.samples
    return SpeechSignal(out, stego.sample_rate_hz)


def embed_silence(
    signal: SpeechSignal,
    digits: Sequence[int],
    threshold: float = DEFAULT_THRESHOLD,
    min_interval: int = DEFAULT_MIN_INTERVAL,
) -> SpeechSignal:
    return apply_edits(signal, silence_edits(signal, digits, threshold, min_interval))


def extract_silence(
    signal: SpeechSignal,
    count: int,
    threshold: float = DEFAULT_THRESHOLD,
    min_interval: int = DEFAULT_MIN_INTERVAL,
) -> list[int]:
    intervals = detect_silence(signal, threshold, min_interval)
    if count > len(intervals):
        raise InsufficientIntervals(f"need {count} intervals, found {len(intervals)}")
    return [iv.length % 10 for iv in intervals[:count]]
