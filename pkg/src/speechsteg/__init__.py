"""Hide 10-digit numbers in speech frames and protect them with a keyed frame cipher."""
from ._kernels import BACKEND
from .baseline import detect_silence, embed_silence, extract_silence
from .cipher import (
    CipherMode,
    decrypt_frame,
    decrypt_signal,
    encrypt_frame,
    encrypt_signal,
)
from .keystream import FrameKey, KeySeed, KeyState, frame_key, step, validate_seed
from .metrics import MetricsReport, ber, mse, psnr, ssim_1d
from .payload import (
    PayloadDigits,
    StegoConfig,
    digit_to_level,
    level_to_digit,
    parse_payload_file,
)
from .pipeline import receive, send
from .signal_io import FrameSet, SpeechSignal, assemble, frame_signal, load_wav, save_wav
from .stego import StegoResult, VerificationReport, capacity, embed, extract, verify

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CipherMode",
    "FrameKey",
    "FrameSet",
    "KeySeed",
    "KeyState",
    "MetricsReport",
    "PayloadDigits",
    "SpeechSignal",
    "StegoConfig",
    "StegoResult",
    "VerificationReport",
    "assemble",
    "ber",
    "capacity",
    "decrypt_frame",
    "decrypt_signal",
    "detect_silence",
    "digit_to_level",
    "embed",
    "embed_silence",
    "encrypt_frame",
    "encrypt_signal",
    "extract",
    "extract_silence",
    "frame_key",
    "frame_signal",
    "level_to_digit",
    "load_wav",
    "mse",
    "parse_payload_file",
    "psnr",
    "receive",
    "save_wav",
    "send",
    "ssim_1d",
    "step",
    "validate_seed",
    "verify",
]
