"""WAV ingestion/output and fixed-length framing of PCM16 signals."""
from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    FrameLengthTooSmall,
    IoFailure,
    MultiChannel,
    NotWav,
    Truncated,
    UnsupportedEncoding,
)

FULL_SCALE = 32767
DEFAULT_RATE = 8000
DEFAULT_FRAME_LENGTH = 160
MIN_FRAME_LENGTH = 20

_PCM = 1
_EXTENSIBLE = 0xFFFE


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SpeechSignal:
    """Mono PCM16 samples plus their sample rate."""

    samples: np.ndarray
    sample_rate_hz: int = DEFAULT_RATE

    def __post_init__(self):
        raw = np.asarray(self.samples)
        if raw.size and raw.dtype != np.int16:
            if np.issubdtype(raw.dtype, np.floating) and not np.all(raw == np.round(raw)):
                raise ValueError("samples must be integer PCM16 levels")
            if raw.min() < -32768 or raw.max() > 32767:
                raise ValueError("sample outside the PCM16 range")
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        object.__setattr__(self, "samples", _frozen(raw.astype(np.int16, copy=True).reshape(-1)))

    def __len__(self) -> int:
        return self.samples.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SpeechSignal):
            return NotImplemented
        return (
            self.sample_rate_hz == other.sample_rate_hz
            and np.array_equal(self.samples, other.samples)
        )

    __hash__ = None

    @property
    def normalized(self) -> np.ndarray:
        return self.samples.astype(np.float64) / FULL_SCALE

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz


@dataclass(frozen=True, eq=False)
class FrameSet:
    """N full frames of ``frame_length`` samples and the leftover tail."""

    frames: np.ndarray
    tail: np.ndarray
    frame_length: int
    sample_rate_hz: int = DEFAULT_RATE

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.int16).reshape(-1, self.frame_length)
        tail = np.asarray(self.tail, dtype=np.int16).reshape(-1)
        if tail.shape[0] >= self.frame_length:
            raise ValueError("tail must be shorter than one frame")
        object.__setattr__(self, "frames", _frozen(frames.copy()))
        object.__setattr__(self, "tail", _frozen(tail.copy()))

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    def __len__(self) -> int:
        return self.n_frames

    def total_samples(self) -> int:
        return self.frames.size + self.tail.shape[0]

    def with_frames(self, frames: np.ndarray) -> "FrameSet":
        return FrameSet(frames, self.tail, self.frame_length, self.sample_rate_hz)


def frame_signal(signal: SpeechSignal, frame_length: int = DEFAULT_FRAME_LENGTH) -> FrameSet:
    if frame_length < MIN_FRAME_LENGTH:
        raise FrameLengthTooSmall(
            f"frame length {frame_length} < {MIN_FRAME_LENGTH}"
        )
    n = len(signal) // frame_length
    cut = n * frame_length
    return FrameSet(
        signal.samples[:cut].reshape(n, frame_length),
        signal.samples[cut:],
        frame_length,
        signal.sample_rate_hz,
    )


def assemble(frameset: FrameSet) -> SpeechSignal:
    return SpeechSignal(
        np.concatenate([frameset.frames.reshape(-1), frameset.tail]),
        frameset.sample_rate_hz,
    )


# ---------------------------------------------------------------------------
# RIFF/WAVE
# ---------------------------------------------------------------------------

def _parse_info(body: bytes) -> dict[str, str]:
    info = {}
    if body[:4] != b"INFO":
        return info
    pos = 4
    while pos + 8 <= len(body):
        tag, size = struct.unpack_from("<4sI", body, pos)
        value = body[pos + 8 : pos + 8 + size].split(b"\0", 1)[0]
        info[tag.decode("ascii", "replace")] = value.decode("utf-8", "replace")
        pos += 8 + size + (size & 1)
    return info


def read_wav(path) -> tuple[SpeechSignal, dict[str, str]]:
    """Decode a mono PCM WAV; also return any LIST/INFO text fields."""
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc

    if len(blob) < 12 or blob[:4] != b"RIFF" or blob[8:12] != b"WAVE":
        raise NotWav(f"{path}: missing RIFF/WAVE header")

    fmt = None
    data = None
    info: dict[str, str] = {}
    pos = 12
    while pos + 8 <= len(blob):
        chunk_id, size = struct.unpack_from("<4sI", blob, pos)
        body = blob[pos + 8 : pos + 8 + size]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise Truncated(f"{path}: short fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body)
            if fmt[0] == _EXTENSIBLE and len(body) >= 26:
                # the real format tag sits at the head of the SubFormat GUID
                fmt = (struct.unpack_from("<H", body, 24)[0],) + fmt[1:]
        elif chunk_id == b"data":
            if len(body) < size:
                raise Truncated(f"{path}: data chunk declares {size} bytes, has {len(body)}")
            data = body
        elif chunk_id == b"LIST":
            info.update(_parse_info(body))
        pos += 8 + size + (size & 1)

    if fmt is None:
        raise NotWav(f"{path}: no fmt chunk")
    if data is None:
        raise Truncated(f"{path}: no data chunk")

    tag, channels, rate, _, _, bits = fmt
    if tag != _PCM:
        raise UnsupportedEncoding(f"{path}: format tag {tag} is not integer PCM")
    if channels != 1:
        raise MultiChannel(f"{path}: {channels} channels")
    if rate == 0:
        raise NotWav(f"{path}: zero sample rate")

    if bits == 8:
        samples = (np.frombuffer(data, dtype=np.uint8).astype(np.int16) - 128) << 8
    elif bits == 16:
        usable = len(data) - len(data) % 2
        samples = np.frombuffer(data[:usable], dtype="<i2")
    else:
        raise UnsupportedEncoding(f"{path}: {bits}-bit PCM")

    if rate != DEFAULT_RATE:
        warnings.warn(f"{path}: sample rate {rate} Hz, expected {DEFAULT_RATE}", stacklevel=2)
    return SpeechSignal(samples, rate), info


def load_wav(path) -> SpeechSignal:
    return read_wav(path)[0]


def _info_chunk(info: dict[str, str]) -> bytes:
    parts = [b"INFO"]
    for tag, text in info.items():
        raw = text.encode("utf-8") + b"\0"
        parts.append(struct.pack("<4sI", tag.encode("ascii")[:4].ljust(4), len(raw)))
        parts.append(raw + (b"\0" if len(raw) & 1 else b""))
    body = b"".join(parts)
    return struct.pack("<4sI", b"LIST", len(body)) + body


def save_wav(signal: SpeechSignal, path, info: dict[str, str] | None = None) -> None:
    """Write ``signal`` as PCM16 mono; ``info`` becomes a LIST/INFO chunk."""
    data = signal.samples.astype("<i2").tobytes()
    rate = signal.sample_rate_hz
    fmt = struct.pack("<HHIIHH", _PCM, 1, rate, rate * 2, 2, 16)
    chunks = struct.pack("<4sI", b"fmt ", len(fmt)) + fmt
    if info:
        chunks += _info_chunk(info)
    chunks += struct.pack("<4sI", b"data", len(data)) + data
    blob = b"RIFF" + struct.pack("<I", 4 + len(chunks)) + b"WAVE" + chunks
    try:
        Path(path).write_bytes(blob)
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
