"""Exception hierarchy shared by every stage of the pipeline."""


class SpeechStegError(Exception):
    """Base class for all library errors."""


# -- WAV / file I/O ---------------------------------------------------------

class WavError(SpeechStegError):
    pass


class NotWav(WavError):
    pass


class UnsupportedEncoding(WavError):
    pass


class MultiChannel(WavError):
    pass


class Truncated(WavError):
    pass


class IoFailure(WavError):
    pass


# -- framing / payloads -----------------------------------------------------

class FrameLengthTooSmall(SpeechStegError):
    pass


class PayloadError(SpeechStegError):
    pass


class BadLength(PayloadError):
    pass


class NonDigit(PayloadError):
    pass


class EmptyFile(PayloadError):
    pass


class ConfigError(SpeechStegError):
    pass


class CapacityExceeded(SpeechStegError):
    pass


class LengthMismatch(SpeechStegError):
    pass


# -- keys -------------------------------------------------------------------

class NotPrime(SpeechStegError):
    def __init__(self, which: str, value: int):
        super().__init__(f"{which}={value} is not prime")
        self.which = which
        self.value = value


class KeyOverflow(SpeechStegError):
    pass


# -- metrics / baseline / harness -------------------------------------------

class Empty(SpeechStegError):
    pass


class TooShort(SpeechStegError):
    pass


class InsufficientIntervals(SpeechStegError):
    pass


class EmptyCorpus(SpeechStegError):
    pass
