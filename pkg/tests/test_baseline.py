import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from speechsteg import SpeechSignal, detect_silence, embed_silence, extract_silence
from speechsteg.baseline import restore_alignment, silence_edits
from speechsteg.errors import InsufficientIntervals
from speechsteg.pipeline import awgn, digit_ber
from speechsteg.synth import speech_like


def runs(zeros_loud_zeros):
    parts = [np.zeros(n, dtype=np.int16) if quiet else np.full(n, 32767, dtype=np.int16)
             for n, quiet in zeros_loud_zeros]
    return SpeechSignal(np.concatenate(parts))


def spans(intervals):
    return [(iv.start, iv.length) for iv in intervals]


def test_all_zero_is_one_interval():
    assert spans(detect_silence(SpeechSignal(np.zeros(1000, dtype=np.int16)), 0.01, 320)) == [(0, 1000)]


def test_square_wave_has_none():
    x = np.tile(np.array([32767, -32767], dtype=np.int16), 500)
    assert detect_silence(SpeechSignal(x), 0.01, 320) == []


def test_two_gaps():
    sig = runs([(500, True), (500, False), (500, True)])
    # direct scan: quiet 0..499, loud 500..999, quiet 1000..1499
    assert spans(detect_silence(sig, 0.01, 320)) == [(0, 500), (1000, 500)]


def test_short_runs_ignored():
    sig = runs([(300, True), (50, False), (400, True)])
    assert spans(detect_silence(sig, 0.01, 320)) == [(350, 400)]


def test_trim_to_digit():
    sig = runs([(1000, True), (200, False)])
    out = embed_silence(sig, [3])
    assert spans(detect_silence(out))[0] == (0, 993)
    assert len(out) == 1193


def test_fixpoint_digit():
    sig = runs([(1000, True), (200, False)])
    assert embed_silence(sig, [0]) == sig


def test_insufficient_intervals():
    sig = runs([(500, True), (500, False), (500, True)])
    with pytest.raises(InsufficientIntervals):
        embed_silence(sig, [1, 2, 3])
    with pytest.raises(InsufficientIntervals):
        extract_silence(SpeechSignal(np.full(800, 20000, dtype=np.int16)), 1)


def test_too_short_to_trim():
    sig = runs([(321, True), (100, False)])
    with pytest.raises(InsufficientIntervals):
        embed_silence(sig, [9])


def test_restore_alignment():
    sig = runs([(1000, True), (200, False), (700, True)])
    edits = silence_edits(sig, [3, 4])
    stego = embed_silence(sig, [3, 4])
    aligned = restore_alignment(stego, edits)
    assert len(aligned) == len(sig)
    assert np.array_equal(aligned.samples, sig.samples)  # deleted samples were zeros


@settings(max_examples=50)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=4), st.lists(st.integers(340, 900), min_size=4, max_size=4))
def test_clean_round_trip(digits, gaps):
    parts = []
    for g in gaps:
        parts += [(g, True), (120, False)]
    sig = runs(parts)
    stego = embed_silence(sig, digits)
    assert extract_silence(stego, len(digits)) == digits
    assert len(sig) - len(stego) <= 9 * len(digits)


def test_noise_breaks_baseline():
    rng = np.random.default_rng(11)
    errors = []
    for _ in range(10):
        cover = speech_like(rng)
        n = sum(1 for iv in detect_silence(cover) if iv.length >= 329)
        digits = rng.integers(0, 10, n).tolist()
        stego = embed_silence(cover, digits)
        assert extract_silence(stego, n) == digits
        noisy = awgn(stego, 40.0, rng)
        got = [iv.length % 10 for iv in detect_silence(noisy)[:n]]
        errors.append(digit_ber(digits, got))
    assert np.mean(errors) > 0


def test_digit_ber_counts_missing():
    assert digit_ber([1, 2], [1, 2]) == 0.0
    assert digit_ber([1, 2], [1]) == 50.0
    assert digit_ber([3], [2]) == 25.0
