"""Prime-recurrence key generator.

Starting from three primes ``(p, q, m)`` each step emits one digit ``k``::

    k  = (p * q) mod 10, bumped to 1 when it is 0
    p' = (k + 1) * m
    q' = nearest_int(p / q) + pos, bumped to 1 when it is 0

where ``pos`` is the global index of the sample the step is keyed to.
Frame ``i`` is keyed by advancing an outer chain one step per frame
(``pos = t * L`` for frame ``t``) and then running ``L`` inner steps from
that state (``pos = i * L + j``).

.. warning::
   This is a toy generator.  Its output digits never take the value 0,
   its state is tiny and it has no security analysis.  Because ``p`` is
   reset to ``(k + 1) * m`` every step, the initial ``p`` and ``q`` are
   forgotten after a few steps and the keystream is, in practice, a function
   of ``m`` alone.  ``m`` of 2 or 5 is degenerate.  Do not use it to protect
   anything that matters.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import ConfigError, IoFailure, KeyOverflow, NotPrime

# keeps every intermediate of the recurrence far inside int64
PRIME_LIMIT = 2**32
_INT64_HEADROOM = 2**61


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


@dataclass(frozen=True)
class KeySeed:
    p: int
    q: int
    m: int

    def __post_init__(self):
        for name in ("p", "q", "m"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise ConfigError(f"{name} must be an integer")
            if value >= PRIME_LIMIT:
                raise KeyOverflow(f"{name}={value} exceeds the supported prime range (< 2**32)")
            if not is_prime(int(value)):
                raise NotPrime(name, int(value))

    def as_dict(self) -> dict:
        return {"p": int(self.p), "q": int(self.q), "m": int(self.m)}


def validate_seed(p: int, q: int, m: int) -> KeySeed:
    return KeySeed(p, q, m)


# (k + 1) * m always ends in 0 or an even digit for these, collapsing the
# output to one or three symbols
WEAK_MODULI = frozenset({2, 5})


def is_weak(seed: KeySeed) -> bool:
    """True when ``m`` makes the keystream degenerate (m = 5 emits only 1s)."""
    return seed.m in WEAK_MODULI


@dataclass(frozen=True)
class KeyState:
    p: int
    q: int
    m: int
    k: int = 1

    @classmethod
    def from_seed(cls, seed: KeySeed) -> "KeyState":
        return cls(seed.p, seed.q, seed.m)


def step(state: KeyState, pos: int) -> tuple[KeyState, int]:
    """Advance the recurrence once; return the new state and the emitted digit."""
    if pos < 0:
        raise ValueError("pos must be non-negative")
    p, q, k = _kernels._step(state.p, state.q, state.m, pos)
    return KeyState(p, q, state.m, k), k


@dataclass(frozen=True, eq=False)
class FrameKey:
    frame_index: int
    values: np.ndarray
    bits: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, FrameKey):
            return NotImplemented
        return self.frame_index == other.frame_index and np.array_equal(self.values, other.values)


def _check_range(seed: KeySeed, last_frame: int, frame_length: int) -> None:
    bound = max(seed.p, seed.q, 10 * seed.m) + (last_frame + 1) * frame_length
    if 3 * bound >= _INT64_HEADROOM:
        raise KeyOverflow("keystream positions too large for 64-bit state")


def keystream_matrix(
    seed: KeySeed, n_frames: int, frame_length: int, first_frame: int = 0
) -> np.ndarray:
    """Key digits for frames ``first_frame .. first_frame + n_frames - 1``."""
    if first_frame < 0 or n_frames < 0:
        raise ValueError("frame indices must be non-negative")
    _check_range(seed, first_frame + n_frames, frame_length)
    return _kernels.keystream(
        int(seed.p), int(seed.q), int(seed.m), int(first_frame), int(n_frames), int(frame_length)
    )


def frame_key(seed: KeySeed, frame_index: int, frame_length: int = 160) -> FrameKey:
    values = keystream_matrix(seed, 1, frame_length, first_frame=frame_index)[0]
    return FrameKey(frame_index, values, (values & 1).astype(bool))


# ---------------------------------------------------------------------------
# seed files / passphrase derivation
# ---------------------------------------------------------------------------

def load_seed(path) -> KeySeed:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not a JSON seed file ({exc})") from exc
    try:
        return KeySeed(int(raw["p"]), int(raw["q"]), int(raw["m"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: seed file needs integer fields p, q, m") from exc


def save_seed(seed: KeySeed, path) -> None:
    try:
        Path(path).write_text(json.dumps(seed.as_dict(), indent=2) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def seed_from_passphrase(passphrase: str) -> KeySeed:
    """Derive three primes from a passphrase (next prime above hash words)."""
    digest = hashlib.sha256(passphrase.encode("utf-8")).digest()
    words = [int.from_bytes(digest[i : i + 4], "big") % (1 << 24) for i in (0, 4, 8)]
    # offset keeps every prime clear of the weak moduli
    return KeySeed(*(next_prime(w + 1000) for w in words))
