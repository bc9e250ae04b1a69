"""10-digit payloads and their mapping to small PCM levels."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BadLength, ConfigError, EmptyFile, NonDigit
from .signal_io import DEFAULT_FRAME_LENGTH, FULL_SCALE

PAYLOAD_DIGITS = 10


@dataclass(frozen=True)
class PayloadDigits:
    digits: tuple[int, ...]

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        if len(digits) != PAYLOAD_DIGITS:
            raise BadLength(f"payload has {len(digits)} digits, need {PAYLOAD_DIGITS}")
        if any(d < 0 or d > 9 for d in digits):
            raise NonDigit(f"digits out of range in {digits}")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def from_string(cls, text: str) -> "PayloadDigits":
        if len(text) != PAYLOAD_DIGITS:
            raise BadLength(f"{text!r}: expected {PAYLOAD_DIGITS} characters, got {len(text)}")
        if not all(c in "0123456789" for c in text):
            raise NonDigit(f"{text!r}: only 0-9 allowed")
        return cls(tuple(int(c) for c in text))

    def __str__(self) -> str:
        return "".join(map(str, self.digits))

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __len__(self):
        return len(self.digits)


@dataclass(frozen=True)
class StegoConfig:
    """Embedding geometry and scaling.

    Levels are ``round(d * full_scale / divisor)``; with the defaults the
    largest level is 295, i.e. 0.009 of full scale.
    """

    frame_length: int = DEFAULT_FRAME_LENGTH
    slots_per_frame: int = PAYLOAD_DIGITS
    divisor: int = 1000
    full_scale: int = FULL_SCALE
    slot_offset: int | None = None

    def __post_init__(self):
        if self.slot_offset is None:
            object.__setattr__(self, "slot_offset", self.frame_length - self.slots_per_frame)
        if self.slots_per_frame != PAYLOAD_DIGITS:
            raise ConfigError("slots_per_frame must equal the payload width (10)")
        if self.slot_offset < 0 or self.slot_offset + self.slots_per_frame > self.frame_length:
            raise ConfigError("embedding slots do not fit inside a frame")
        if self.divisor < 90:
            raise ConfigError("divisor must be >= 90 so embedded levels stay below 0.1 of full scale")
        levels = [digit_to_level(d, self) for d in range(10)]
        if len(set(levels)) != 10:
            raise ConfigError(f"divisor {self.divisor} maps distinct digits to the same level")
        if any(level_to_digit(v, self) != d for d, v in enumerate(levels)):
            raise ConfigError(f"divisor {self.divisor} is too coarse to round-trip digits")

    @property
    def slots(self) -> slice:
        return slice(self.slot_offset, self.slot_offset + self.slots_per_frame)


def _round_ratio(num: int, den: int) -> int:
    # nearest integer to num/den for den > 0, ties away from zero
    if num >= 0:
        return (2 * num + den) // (2 * den)
    return -((-2 * num + den) // (2 * den))


def digit_to_level(d: int, cfg: StegoConfig | None = None) -> int:
    cfg = cfg or DEFAULT_CONFIG
    return _round_ratio(int(d) * cfg.full_scale, cfg.divisor)


def level_to_digit(v: int, cfg: StegoConfig | None = None) -> int:
    cfg = cfg or DEFAULT_CONFIG
    return min(9, max(0, _round_ratio(int(v) * cfg.divisor, cfg.full_scale)))


def level_table(cfg: StegoConfig | None = None) -> list[int]:
    return [digit_to_level(d, cfg) for d in range(10)]


DEFAULT_CONFIG = StegoConfig()


def parse_payload_file(text: str) -> list[PayloadDigits]:
    """One payload per non-blank line; ``#`` starts a comment line."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(PayloadDigits.from_string(line))
        except (BadLength, NonDigit) as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    if not out:
        raise EmptyFile("no payload lines found")
    return out


def format_payload_file(payloads: Iterable[PayloadDigits]) -> str:
    return "".join(f"{p}\n" for p in payloads)
