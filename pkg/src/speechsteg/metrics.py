"""Fidelity (MSE, PSNR, 1-D SSIM) and integrity (BER) measures.

Amplitudes are compared in normalized units, ``sample / 32767``; PSNR uses
a peak of 1.0.  SSIM is computed over sliding windows (default one 160-sample
frame, hop 80) with the usual constants for a dynamic range of 2.0.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels
from .errors import Empty, LengthMismatch, TooShort
from .signal_io import FULL_SCALE, SpeechSignal

SSIM_WINDOW = 160
SSIM_STRIDE = 80
DYNAMIC_RANGE = 2.0
K1, K2 = 0.01, 0.03


def _normalized(x) -> np.ndarray:
    if isinstance(x, SpeechSignal):
        return x.normalized
    arr = np.asarray(x)
    if np.issubdtype(arr.dtype, np.integer):
        return arr.astype(np.float64) / FULL_SCALE
    return arr.astype(np.float64)


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = _normalized(a).reshape(-1)
    b = _normalized(b).reshape(-1)
    if a.shape != b.shape:
        raise LengthMismatch(f"signals have {a.shape[0]} and {b.shape[0]} samples")
    if a.shape[0] == 0:
        raise Empty("metrics need at least one sample")
    return a, b


def mse(a, b) -> float:
    """Mean squared error in normalized amplitude units.

    Integer arrays and ``SpeechSignal`` are divided by full scale; float
    arrays are taken as already normalized.
    """
    a, b = _pair(a, b)
    d = a - b
    return float(np.dot(d, d) / d.shape[0])


def psnr_from_mse(value: float) -> float:
    if value < 0:
        raise ValueError("mse must be non-negative")
    if value == 0:
        return math.inf
    return 10.0 * math.log10(1.0 / value)


def psnr(a, b) -> float:
    return psnr_from_mse(mse(a, b))


def ssim_1d(a, b, window: int = SSIM_WINDOW, stride: int = SSIM_STRIDE) -> float:
    a, b = _pair(a, b)
    if window < 2 or stride < 1:
        raise ValueError("window must be >= 2 and stride >= 1")
    if a.shape[0] < window:
        raise TooShort(f"{a.shape[0]} samples is shorter than one {window}-sample window")
    c1 = (K1 * DYNAMIC_RANGE) ** 2
    c2 = (K2 * DYNAMIC_RANGE) ** 2
    per_window = _kernels.ssim_windows(a, b, window, stride, c1, c2)
    return float(math.fsum(per_window) / per_window.shape[0])


def ber(sent_bits, received_bits) -> float:
    """Percentage of differing positions between two bit sequences."""
    s = np.asarray(sent_bits).reshape(-1)
    r = np.asarray(received_bits).reshape(-1)
    if s.shape != r.shape:
        raise LengthMismatch(f"bit sequences of length {s.shape[0]} and {r.shape[0]}")
    if s.shape[0] == 0:
        raise Empty("ber needs at least one bit")
    return 100.0 * int(np.count_nonzero(s != r)) / s.shape[0]


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    psnr_db: float
    ssim: float
    ber_percent: float

    def as_dict(self) -> dict:
        return asdict(self)


def fidelity(cover, stego, ber_percent: float = 0.0) -> MetricsReport:
    return MetricsReport(mse(cover, stego), psnr(cover, stego), ssim_1d(cover, stego), ber_percent)
