import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from speechsteg import PayloadDigits, SpeechSignal, capacity, embed, extract, frame_signal, verify
from speechsteg.errors import CapacityExceeded, LengthMismatch
from speechsteg.signal_io import FrameSet
from speechsteg.stego import payload_bits

import oracles

RAMP = PayloadDigits(tuple(range(10)))
digits10 = st.lists(st.integers(0, 9), min_size=10, max_size=10).map(lambda d: PayloadDigits(tuple(d)))


def zeros(n_frames, frame_length=160):
    return frame_signal(SpeechSignal(np.zeros(n_frames * frame_length, dtype=np.int16)), frame_length)


def test_zero_payload_is_fixpoint():
    res = embed(zeros(1), [PayloadDigits((0,) * 10)])
    assert not res.stego_frames.frames.any()
    assert res.embedded_count == 1


def test_ramp_payload_levels():
    res = embed(zeros(1), [RAMP])
    frame = res.stego_frames.frames[0]
    expected = [oracles.level(d) for d in range(10)]
    assert expected == [0, 33, 66, 98, 131, 164, 197, 229, 262, 295]
    assert frame[150:].tolist() == expected
    assert not frame[:150].any()


def test_capacity_exceeded():
    with pytest.raises(CapacityExceeded):
        embed(zeros(2), [RAMP] * 3)
    with pytest.raises(CapacityExceeded):
        extract(zeros(2), 3)


def test_extract_known_slots():
    frame = np.zeros(160, dtype=np.int16)
    frame[150:] = [0, 33, 66, 98, 131, 164, 197, 229, 262, 295]
    fs = FrameSet(frame[None, :], [], 160)
    assert extract(fs, 1) == [RAMP]


def test_extract_garbage_is_total(rng):
    fs = FrameSet(rng.integers(-32768, 32768, (1, 160)), [], 160)
    (got,) = extract(fs, 1)
    assert all(0 <= d <= 9 for d in got)


def test_frames_beyond_payloads_unchanged(rng):
    cover = frame_signal(SpeechSignal(rng.integers(-3000, 3000, 160 * 4)), 160)
    res = embed(cover, [RAMP])
    assert np.array_equal(res.stego_frames.frames[1:], cover.frames[1:])
    assert np.array_equal(res.stego_frames.tail, cover.tail)


@pytest.mark.parametrize("n, cap", [(18000, 112), (0, 0), (319, 1)])
def test_capacity(n, cap):
    assert capacity(frame_signal(SpeechSignal(np.zeros(n, dtype=np.int16)))) == cap


def test_verify_identical():
    rep = verify([RAMP], [RAMP])
    assert rep.matched and rep.ber_percent == 0.0 and rep.mismatch_frames == []


def test_verify_single_bit():
    # digit 3 -> 2 is 0011 vs 0010: one bit of 40
    sent = PayloadDigits((3,) + (0,) * 9)
    got = PayloadDigits((2,) + (0,) * 9)
    rep = verify([sent], [got])
    assert rep.error_bits == 1 and rep.total_bits == 40
    assert rep.ber_percent == 2.5
    assert not rep.matched and rep.mismatch_frames == [0]


def test_verify_length_mismatch():
    with pytest.raises(LengthMismatch):
        verify([RAMP], [])


def test_bcd_encoding():
    assert payload_bits([RAMP])[:8].tolist() == [0, 0, 0, 0, 0, 0, 0, 1]
    assert payload_bits([RAMP])[-4:].tolist() == [1, 0, 0, 1]


def test_report_serializes():
    d = verify([RAMP], [RAMP]).as_dict()
    assert set(d) >= {"matched", "total_bits", "error_bits", "ber_percent", "mismatch_frames"}


@settings(max_examples=1000)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    arrays(np.int16, n * 160 + 37),
    st.lists(digits10, min_size=0, max_size=n),
)))
def test_round_trip_and_locality(case):
    samples, payloads = case
    cover = frame_signal(SpeechSignal(samples), 160)
    res = embed(cover, payloads)
    stego = res.stego_frames
    assert extract(stego, len(payloads)) == payloads
    diff = stego.frames != cover.frames
    assert not diff[:, :150].any()
    assert diff.sum(axis=1).max(initial=0) <= 10
    assert np.array_equal(stego.tail, cover.tail)
    assert res.embedded_count == len(payloads)


@given(st.lists(digits10, min_size=1, max_size=5), st.lists(digits10, min_size=1, max_size=5))
def test_matched_iff_zero_ber(a, b):
    b = (b * 5)[: len(a)]
    rep = verify(a, b)
    assert rep.matched == (rep.ber_percent == 0.0) == (not rep.mismatch_frames)
