"""Straight-line reference implementations used as independent oracles.

Nothing here imports the package under test.
"""
from __future__ import annotations

import math
import struct
from fractions import Fraction

S = 32767


def nearest(x: Fraction) -> int:
    """Nearest integer, halves rounded away from zero."""
    if x >= 0:
        return math.floor(x + Fraction(1, 2))
    return -math.floor(-x + Fraction(1, 2))


def recurrence_step(p, q, m, pos):
    k = (p * q) % 10
    if k == 0:
        k = 1
    p_new = (k + 1) * m
    q_new = nearest(Fraction(p, q)) + pos
    if q_new == 0:
        q_new = 1
    return p_new, q_new, k


def frame_digits(p, q, m, frame_index, frame_length):
    for t in range(frame_index):
        p, q, _ = recurrence_step(p, q, m, t * frame_length)
    out = []
    for j in range(frame_length):
        p, q, k = recurrence_step(p, q, m, frame_index * frame_length + j)
        out.append(k)
    return out


def level(d, divisor=1000):
    return nearest(Fraction(d * S, divisor))


def scramble(frame, key):
    x = list(frame)
    n = len(x)
    for i in range(n - 1, 0, -1):
        s = sum(key[: i + 1]) % (i + 1)
        x[i], x[s] = x[s], x[i]
    return x


def mask(frame, key):
    out = []
    for v, k in zip(frame, key):
        w = (v + (k * 3641) % 65536) % 65536
        out.append(w - 65536 if w >= 32768 else w)
    return out


def mse(a, b):
    total = 0.0
    for x, y in zip(a, b):
        total += (x / S - y / S) ** 2
    return total / len(a)


def psnr(a, b):
    e = mse(a, b)
    return math.inf if e == 0 else 10 * math.log10(1 / e)


def ssim(a, b, window=160, stride=80):
    a = [x / S for x in a]
    b = [x / S for x in b]
    c1 = (0.01 * 2) ** 2
    c2 = (0.03 * 2) ** 2
    values = []
    start = 0
    while start + window <= len(a):
        wa = a[start : start + window]
        wb = b[start : start + window]
        ma = sum(wa) / window
        mb = sum(wb) / window
        va = sum((x - ma) ** 2 for x in wa) / window
        vb = sum((y - mb) ** 2 for y in wb) / window
        cv = sum((x - ma) * (y - mb) for x, y in zip(wa, wb)) / window
        values.append(((2 * ma * mb + c1) * (2 * cv + c2)) / ((ma**2 + mb**2 + c1) * (va + vb + c2)))
        start += stride
    return sum(values) / len(values)


def ber(s, r):
    return 100.0 * sum(1 for x, y in zip(s, r) if x != y) / len(s)


def wav_bytes(samples, rate=8000, channels=1, bits=16, fmt_tag=1, extra_chunks=b""):
    """RIFF/WAVE built field by field."""
    if bits == 16:
        data = b"".join(struct.pack("<h", v) for v in samples)
    else:
        data = bytes(samples)
    block_align = channels * bits // 8
    fmt = (
        struct.pack("<H", fmt_tag)
        + struct.pack("<H", channels)
        + struct.pack("<I", rate)
        + struct.pack("<I", rate * block_align)
        + struct.pack("<H", block_align)
        + struct.pack("<H", bits)
    )
    body = (
        b"WAVE"
        + b"fmt " + struct.pack("<I", len(fmt)) + fmt
        + extra_chunks
        + b"data" + struct.pack("<I", len(data)) + data
    )
    return b"RIFF" + struct.pack("<I", len(body)) + body
