"""Hot inner loops, each with a numba kernel and a pure-numpy twin.

The numba path is used when numba imports cleanly and the environment
variable ``SPEECHSTEG_DISABLE_NUMBA`` is unset (or set to ``0``).  Both
paths are bit-exact for integer kernels; the SSIM kernel agrees to
rounding.  ``benchmarks/bench_kernels.py`` times the two against each other.
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("SPEECHSTEG_DISABLE_NUMBA", "0").strip().lower()

try:
    if _FLAG in ("1", "true", "yes", "on"):
        raise ImportError("numba disabled by SPEECHSTEG_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# keystream recurrence
# ---------------------------------------------------------------------------

def _step(p, q, m, pos):
    # (p*q) mod 10 via the last digits only; p*q itself may not fit in int64
    k = ((p % 10) * (q % 10)) % 10
    if k == 0:
        k = 1
    p_new = (k + 1) * m
    # nearest integer to p/q, ties away from zero (p, q > 0)
    q_new = (2 * p + q) // (2 * q) + pos
    if q_new == 0:
        q_new = 1
    return p_new, q_new, k


def _keystream_py(p, q, m, first_frame, n_frames, frame_length):
    out = np.empty((n_frames, frame_length), dtype=np.int64)
    for t in range(first_frame):
        p, q, _ = _step(p, q, m, t * frame_length)
    for r in range(n_frames):
        i = first_frame + r
        base = i * frame_length
        ip, iq = p, q
        for j in range(frame_length):
            ip, iq, k = _step(ip, iq, m, base + j)
            out[r, j] = k
        p, q, _ = _step(p, q, m, base)
    return out


# ---------------------------------------------------------------------------
# keyed in-frame permutation
# ---------------------------------------------------------------------------

def swap_table(values: np.ndarray) -> np.ndarray:
    """Partner index for each position: running key sum mod (i + 1)."""
    values = np.asarray(values, dtype=np.int64)
    width = values.shape[-1]
    return np.cumsum(values, axis=-1) % np.arange(1, width + 1, dtype=np.int64)


def _scramble_numpy(frames, swaps):
    out = frames.copy()
    rows = np.arange(out.shape[0])
    for i in range(out.shape[1] - 1, 0, -1):
        s = swaps[:, i]
        held = out[rows, i].copy()
        out[rows, i] = out[rows, s]
        out[rows, s] = held
    return out


def _unscramble_numpy(frames, swaps):
    out = frames.copy()
    rows = np.arange(out.shape[0])
    for i in range(1, out.shape[1]):
        s = swaps[:, i]
        held = out[rows, i].copy()
        out[rows, i] = out[rows, s]
        out[rows, s] = held
    return out


def _scramble_loop(frames, swaps):
    out = frames.copy()
    n, width = out.shape
    for r in range(n):
        for i in range(width - 1, 0, -1):
            s = swaps[r, i]
            held = out[r, i]
            out[r, i] = out[r, s]
            out[r, s] = held
    return out


def _unscramble_loop(frames, swaps):
    out = frames.copy()
    n, width = out.shape
    for r in range(n):
        for i in range(1, width):
            s = swaps[r, i]
            held = out[r, i]
            out[r, i] = out[r, s]
            out[r, s] = held
    return out


# ---------------------------------------------------------------------------
# windowed SSIM
# ---------------------------------------------------------------------------

def _ssim_windows_numpy(a, b, window, stride, c1, c2):
    from numpy.lib.stride_tricks import sliding_window_view

    wa = sliding_window_view(a, window)[::stride]
    wb = sliding_window_view(b, window)[::stride]
    mu_a = wa.mean(axis=1)
    mu_b = wb.mean(axis=1)
    da = wa - mu_a[:, None]
    db = wb - mu_b[:, None]
    var_a = (da * da).mean(axis=1)
    var_b = (db * db).mean(axis=1)
    cov = (da * db).mean(axis=1)
    return ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) / (
        (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    )


def _ssim_windows_loop(a, b, window, stride, c1, c2):
    count = (a.shape[0] - window) // stride + 1
    out = np.empty(count, dtype=np.float64)
    for w in range(count):
        start = w * stride
        sa = 0.0
        sb = 0.0
        for j in range(start, start + window):
            sa += a[j]
            sb += b[j]
        mu_a = sa / window
        mu_b = sb / window
        va = 0.0
        vb = 0.0
        cv = 0.0
        for j in range(start, start + window):
            da = a[j] - mu_a
            db = b[j] - mu_b
            va += da * da
            vb += db * db
            cv += da * db
        va /= window
        vb /= window
        cv /= window
        out[w] = ((2 * mu_a * mu_b + c1) * (2 * cv + c2)) / (
            (mu_a * mu_a + mu_b * mu_b + c1) * (va + vb + c2)
        )
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

keystream_numpy = _keystream_py
scramble_numpy = _scramble_numpy
unscramble_numpy = _unscramble_numpy
ssim_windows_numpy = _ssim_windows_numpy

if HAVE_NUMBA:
    _step_nb = njit(cache=True)(_step)

    @njit(cache=True)
    def keystream_numba(p, q, m, first_frame, n_frames, frame_length):
        out = np.empty((n_frames, frame_length), dtype=np.int64)
        for t in range(first_frame):
            p, q, _ = _step_nb(p, q, m, t * frame_length)
        for r in range(n_frames):
            i = first_frame + r
            base = i * frame_length
            ip, iq = p, q
            for j in range(frame_length):
                ip, iq, k = _step_nb(ip, iq, m, base + j)
                out[r, j] = k
            p, q, _ = _step_nb(p, q, m, base)
        return out

    scramble_numba = njit(cache=True)(_scramble_loop)
    unscramble_numba = njit(cache=True)(_unscramble_loop)
    ssim_windows_numba = njit(cache=True)(_ssim_windows_loop)

    keystream = keystream_numba
    scramble = scramble_numba
    unscramble = unscramble_numba
    ssim_windows = ssim_windows_numba
else:  # pragma: no cover - depends on environment
    keystream = keystream_numpy
    scramble = scramble_numpy
    unscramble = unscramble_numpy
    ssim_windows = ssim_windows_numpy
