"""Per-frame payload embedding, extraction and verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapacityExceeded, LengthMismatch
from .payload import DEFAULT_CONFIG, PayloadDigits, StegoConfig, level_table
from .signal_io import FrameSet

BITS_PER_DIGIT = 4


@dataclass(frozen=True, eq=False)
class StegoResult:
    stego_frames: FrameSet
    embedded_count: int


@dataclass(frozen=True)
class VerificationReport:
    matched: bool
    total_bits: int
    error_bits: int
    ber_percent: float
    mismatch_frames: list[int] = field(default_factory=list)
    bit_encoding: str = "bcd4"

    def as_dict(self) -> dict:
        return {
            "matched": self.matched,
            "total_bits": self.total_bits,
            "error_bits": self.error_bits,
            "ber_percent": self.ber_percent,
            "mismatch_frames": list(self.mismatch_frames),
            "bit_encoding": self.bit_encoding,
        }


def capacity(frames: FrameSet) -> int:
    return frames.n_frames


def _check_geometry(frames: FrameSet, cfg: StegoConfig) -> None:
    if frames.frame_length != cfg.frame_length:
        raise LengthMismatch(
            f"frames are {frames.frame_length} samples, config expects {cfg.frame_length}"
        )


def embed(
    cover: FrameSet,
    payloads: Sequence[PayloadDigits],
    cfg: StegoConfig = DEFAULT_CONFIG,
) -> StegoResult:
    """Overwrite the slot samples of frame i with the levels of payload i."""
    _check_geometry(cover, cfg)
    if len(payloads) > cover.n_frames:
        raise CapacityExceeded(
            f"{len(payloads)} payloads but only {cover.n_frames} frames"
        )
    frames = cover.frames.copy()
    if payloads:
        digits = np.array([p.digits for p in payloads], dtype=np.int64)
        levels = np.asarray(level_table(cfg), dtype=np.int16)
        frames[: len(payloads), cfg.slots] = levels[digits]
    return StegoResult(cover.with_frames(frames), len(payloads))


def _levels_to_digits(levels: np.ndarray, cfg: StegoConfig) -> np.ndarray:
    v = levels.astype(np.int64) * cfg.divisor
    s = cfg.full_scale
    # nearest integer, ties away from zero, then clamp to a digit
    rounded = np.where(v >= 0, (2 * v + s) // (2 * s), -((-2 * v + s) // (2 * s)))
    return np.clip(rounded, 0, 9)


def extract(frames: FrameSet, count: int, cfg: StegoConfig = DEFAULT_CONFIG) -> list[PayloadDigits]:
    _check_geometry(frames, cfg)
    if count < 0 or count > frames.n_frames:
        raise CapacityExceeded(f"asked for {count} payloads from {frames.n_frames} frames")
    digits = _levels_to_digits(frames.frames[:count, cfg.slots], cfg)
    return [PayloadDigits(tuple(row)) for row in digits.tolist()]


def payload_bits(payloads: Sequence[PayloadDigits]) -> np.ndarray:
    """Flatten payloads to a 4-bit BCD stream, most significant bit first."""
    if not payloads:
        return np.zeros(0, dtype=np.uint8)
    digits = np.array([p.digits for p in payloads], dtype=np.uint8).reshape(-1)
    shifts = np.arange(BITS_PER_DIGIT - 1, -1, -1, dtype=np.uint8)
    return ((digits[:, None] >> shifts) & 1).reshape(-1)


def verify(sent: Sequence[PayloadDigits], received: Sequence[PayloadDigits]) -> VerificationReport:
    if len(sent) != len(received):
        raise LengthMismatch(f"sent {len(sent)} payloads, received {len(received)}")
    a = payload_bits(sent)
    b = payload_bits(received)
    errors = int(np.count_nonzero(a != b))
    total = int(a.shape[0])
    mismatches = [i for i, (s, r) in enumerate(zip(sent, received)) if s != r]
    ber = 100.0 * errors / total if total else 0.0
    return VerificationReport(
        matched=not mismatches,
        total_bits=total,
        error_bits=errors,
        ber_percent=ber,
        mismatch_frames=mismatches,
    )
