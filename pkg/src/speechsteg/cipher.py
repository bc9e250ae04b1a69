"""Invertible per-frame encryption: keyed scrambling plus a modular mask.

Scrambling walks ``i = L-1 .. 1`` and swaps position ``i`` with
``sum(key[0..i]) mod (i + 1)``.  Masking then adds
``key[i] * MASK_MULTIPLIER mod 65536`` to sample ``i`` with 16-bit
wraparound.  Decryption undoes the mask first, then replays the swaps in
ascending order.  The tail of a signal is never touched.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConfigError, LengthMismatch
from .keystream import FrameKey, KeySeed, keystream_matrix
from .signal_io import FrameSet

MASK_MULTIPLIER = 3641  # floor(65536 / 18)
CIPHER_VERSION = "1"


@dataclass(frozen=True)
class CipherMode:
    scramble: bool = True
    mask: bool = True

    def __post_init__(self):
        if not (self.scramble or self.mask):
            raise ConfigError("cipher mode needs scramble, mask, or both")

    @property
    def label(self) -> str:
        return "+".join(n for n in ("scramble", "mask") if getattr(self, n))

    @classmethod
    def from_label(cls, label: str) -> "CipherMode":
        parts = {p.strip() for p in label.replace(",", "+").split("+") if p.strip()}
        unknown = parts - {"scramble", "mask"}
        if unknown:
            raise ConfigError(f"unknown cipher mode component(s): {sorted(unknown)}")
        return cls(scramble="scramble" in parts, mask="mask" in parts)


DEFAULT_MODE = CipherMode()


def mask_values(values: np.ndarray) -> np.ndarray:
    return (np.asarray(values, dtype=np.int64) * MASK_MULTIPLIER) % 65536


def _wrap_add(frames: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return (frames.astype(np.int64) + mask).astype(np.uint16).view(np.int16)


def _wrap_sub(frames: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return (frames.astype(np.int64) - mask).astype(np.uint16).view(np.int16)


def encrypt_block(frames: np.ndarray, keys: np.ndarray, mode: CipherMode = DEFAULT_MODE) -> np.ndarray:
    """Encrypt an (N, L) int16 block with an (N, L) block of key digits."""
    frames = np.asarray(frames, dtype=np.int16)
    keys = np.asarray(keys, dtype=np.int64)
    if frames.shape != keys.shape:
        raise LengthMismatch(f"frame block {frames.shape} vs key block {keys.shape}")
    out = frames.copy()
    if mode.scramble and out.size:
        out = _kernels.scramble(out, _kernels.swap_table(keys))
    if mode.mask:
        out = _wrap_add(out, mask_values(keys))
    return out


def decrypt_block(frames: np.ndarray, keys: np.ndarray, mode: CipherMode = DEFAULT_MODE) -> np.ndarray:
    frames = np.asarray(frames, dtype=np.int16)
    keys = np.asarray(keys, dtype=np.int64)
    if frames.shape != keys.shape:
        raise LengthMismatch(f"frame block {frames.shape} vs key block {keys.shape}")
    out = frames.copy()
    if mode.mask:
        out = _wrap_sub(out, mask_values(keys))
    if mode.scramble and out.size:
        out = _kernels.unscramble(out, _kernels.swap_table(keys))
    return out


def encrypt_frame(frame, key: FrameKey, mode: CipherMode = DEFAULT_MODE) -> np.ndarray:
    frame = np.asarray(frame, dtype=np.int16)
    if frame.shape[0] != key.values.shape[0]:
        raise LengthMismatch(f"frame has {frame.shape[0]} samples, key has {key.values.shape[0]}")
    return encrypt_block(frame[None, :], key.values[None, :], mode)[0]


def decrypt_frame(frame, key: FrameKey, mode: CipherMode = DEFAULT_MODE) -> np.ndarray:
    frame = np.asarray(frame, dtype=np.int16)
    if frame.shape[0] != key.values.shape[0]:
        raise LengthMismatch(f"frame has {frame.shape[0]} samples, key has {key.values.shape[0]}")
    return decrypt_block(frame[None, :], key.values[None, :], mode)[0]


def encrypt_signal(frames: FrameSet, seed: KeySeed, mode: CipherMode = DEFAULT_MODE) -> FrameSet:
    keys = keystream_matrix(seed, frames.n_frames, frames.frame_length)
    return frames.with_frames(encrypt_block(frames.frames, keys, mode))


def decrypt_signal(frames: FrameSet, seed: KeySeed, mode: CipherMode = DEFAULT_MODE) -> FrameSet:
    keys = keystream_matrix(seed, frames.n_frames, frames.frame_length)
    return frames.with_frames(decrypt_block(frames.frames, keys, mode))


def header_info(mode: CipherMode, frame_length: int, slots: int) -> dict[str, str]:
    """Informational text stored in encrypted WAVs (LIST/INFO ICMT)."""
    return {
        "ICMT": f"mode={mode.label};L={frame_length};slots={slots};version={CIPHER_VERSION}",
    }


def parse_header_info(info: dict[str, str]) -> dict[str, str]:
    text = info.get("ICMT", "")
    fields = {}
    for part in text.split(";"):
        if "=" in part:
            key, value = part.split("=", 1)
            fields[key.strip()] = value.strip()
    return fields if {"mode", "L"} <= fields.keys() else {}
