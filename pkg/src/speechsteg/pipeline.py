"""Transmit/receive composition and the two-method evaluation harness."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import baseline, metrics
from .cipher import DEFAULT_MODE, CipherMode, decrypt_signal, encrypt_signal
from .errors import InsufficientIntervals
from .keystream import KeySeed
from .payload import DEFAULT_CONFIG, PayloadDigits, StegoConfig
from .signal_io import FULL_SCALE, SpeechSignal, assemble, frame_signal
from .stego import BITS_PER_DIGIT, VerificationReport, capacity, embed, extract, payload_bits, verify


@dataclass(frozen=True, eq=False)
class SendResult:
    encrypted: SpeechSignal
    stego: SpeechSignal
    capacity: int
    embedded_count: int
    report: metrics.MetricsReport


def send(
    cover: SpeechSignal,
    payloads: Sequence[PayloadDigits],
    seed: KeySeed,
    mode: CipherMode = DEFAULT_MODE,
    cfg: StegoConfig = DEFAULT_CONFIG,
) -> SendResult:
    frames = frame_signal(cover, cfg.frame_length)
    result = embed(frames, payloads, cfg)
    stego = assemble(result.stego_frames)
    encrypted = assemble(encrypt_signal(result.stego_frames, seed, mode))
    if len(cover) >= metrics.SSIM_WINDOW:
        report = metrics.fidelity(cover, stego)
    else:
        m = metrics.mse(cover, stego) if len(cover) else 0.0
        report = metrics.MetricsReport(m, metrics.psnr_from_mse(m), math.nan, 0.0)
    return SendResult(encrypted, stego, capacity(frames), result.embedded_count, report)


def receive(
    received: SpeechSignal,
    seed: KeySeed,
    count: int,
    mode: CipherMode = DEFAULT_MODE,
    cfg: StegoConfig = DEFAULT_CONFIG,
) -> tuple[list[PayloadDigits], SpeechSignal]:
    """Decrypt and extract; returns the payloads and the decrypted signal."""
    frames = frame_signal(received, cfg.frame_length)
    plain = decrypt_signal(frames, seed, mode)
    return extract(plain, count, cfg), assemble(plain)


def random_payloads(rng: np.random.Generator, n: int) -> list[PayloadDigits]:
    return [PayloadDigits(tuple(row)) for row in rng.integers(0, 10, size=(n, 10)).tolist()]


def awgn(signal: SpeechSignal, snr_db: float, rng: np.random.Generator) -> SpeechSignal:
    """Add white noise at ``snr_db`` relative to the signal power, requantize."""
    if math.isinf(snr_db):
        return signal
    x = signal.normalized
    power = float(np.mean(x**2)) if len(x) else 0.0
    sigma = math.sqrt(power / 10 ** (snr_db / 10))
    y = x + rng.normal(0.0, sigma, x.shape[0])
    pcm = np.clip(np.round(y * FULL_SCALE), -32768, 32767).astype(np.int16)
    return SpeechSignal(pcm, signal.sample_rate_hz)


def digit_ber(sent: Sequence[int], received: Sequence[int]) -> float:
    """BER over 4-bit digit codes; digits missing from ``received`` count as all-wrong."""
    if not sent:
        return 0.0
    s = np.asarray(sent, dtype=np.uint8)
    r = np.asarray(list(received)[: len(sent)], dtype=np.int16)
    shifts = np.arange(BITS_PER_DIGIT - 1, -1, -1)
    sb = (s[:, None] >> shifts) & 1
    errors = int(np.count_nonzero(sb[: r.shape[0]] != ((r[:, None] >> shifts) & 1)))
    errors += BITS_PER_DIGIT * (len(sent) - r.shape[0])
    return 100.0 * errors / (BITS_PER_DIGIT * len(sent))


@dataclass(frozen=True)
class EvalRecord:
    file: str
    method: str
    channel: str
    mse: float
    psnr_db: float
    ssim: float
    ber_percent: float
    payload_bits: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class EvalSettings:
    seed: KeySeed
    mode: CipherMode = DEFAULT_MODE
    cfg: StegoConfig = DEFAULT_CONFIG
    payloads_per_signal: int | None = None  # None: fill every frame
    threshold: float = baseline.DEFAULT_THRESHOLD
    min_interval: int = baseline.DEFAULT_MIN_INTERVAL
    baseline_snr_db: float = 40.0
    rng_seed: int = 0
    extra: dict = field(default_factory=dict)


def _channel_label(snr_db: float) -> str:
    return "clean" if math.isinf(snr_db) else f"awgn-{snr_db:g}dB"


def evaluate_proposed(name: str, cover: SpeechSignal, rng: np.random.Generator, s: EvalSettings) -> EvalRecord:
    n_cap = len(cover) // s.cfg.frame_length
    n = n_cap if s.payloads_per_signal is None else min(s.payloads_per_signal, n_cap)
    sent = random_payloads(rng, n)
    tx = send(cover, sent, s.seed, s.mode, s.cfg)
    got, _ = receive(tx.encrypted, s.seed, n, s.mode, s.cfg)
    rep: VerificationReport = verify(sent, got)
    return EvalRecord(
        name, "proposed", "clean", tx.report.mse, tx.report.psnr_db, tx.report.ssim,
        rep.ber_percent, rep.total_bits,
    )


def evaluate_baseline(name: str, cover: SpeechSignal, rng: np.random.Generator, s: EvalSettings) -> EvalRecord:
    intervals = baseline.detect_silence(cover, s.threshold, s.min_interval)
    # digits go to intervals in order, so only a prefix that survives a 9-sample trim is usable
    n = 0
    for iv in intervals:
        if iv.length - 9 < s.min_interval:
            break
        n += 1
    if n == 0:
        raise InsufficientIntervals(f"{name}: no silent interval can carry a digit")
    digits = rng.integers(0, 10, size=n).tolist()
    edits = baseline.silence_edits(cover, digits, s.threshold, s.min_interval)
    stego = baseline.apply_edits(cover, edits)
    aligned = baseline.restore_alignment(stego, edits)
    channel = awgn(stego, s.baseline_snr_db, rng)
    found = baseline.detect_silence(channel, s.threshold, s.min_interval)
    got = [iv.length % 10 for iv in found[:n]]
    report = metrics.fidelity(cover, aligned)
    return EvalRecord(
        name, "silence-interval", _channel_label(s.baseline_snr_db), report.mse,
        report.psnr_db, report.ssim, digit_ber(digits, got), BITS_PER_DIGIT * n,
    )


def aggregate(records: Sequence[EvalRecord]) -> list[EvalRecord]:
    """Per-method means, summed in sorted file order."""
    out = []
    for method in dict.fromkeys(r.method for r in records):
        rows = sorted((r for r in records if r.method == method), key=lambda r: r.file)
        k = len(rows)

        def mean(attr):
            return math.fsum(getattr(r, attr) for r in rows) / k

        out.append(EvalRecord(
            "<mean>", method, rows[0].channel, mean("mse"), mean("psnr_db"), mean("ssim"),
            mean("ber_percent"), sum(r.payload_bits for r in rows),
        ))
    return out


def evaluate_corpus(named: Sequence[tuple[str, SpeechSignal]], s: EvalSettings) -> tuple[list[EvalRecord], list[EvalRecord]]:
    records = []
    for i, (name, sig) in enumerate(sorted(named, key=lambda t: t[0])):
        rng = np.random.default_rng([s.rng_seed, i])
        records.append(evaluate_proposed(name, sig, rng, s))
        try:
            records.append(evaluate_baseline(name, sig, rng, s))
        except InsufficientIntervals:
            pass
    return records, aggregate(records)
