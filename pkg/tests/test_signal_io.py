import struct

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from speechsteg import SpeechSignal, assemble, frame_signal, load_wav, save_wav
from speechsteg.errors import (
    FrameLengthTooSmall,
    IoFailure,
    MultiChannel,
    NotWav,
    Truncated,
    UnsupportedEncoding,
)
from speechsteg.signal_io import read_wav

import oracles

# 44-byte canonical header + four PCM16 samples, checked by hand:
# RIFF size 44, fmt len 16, tag 1, 1 ch, 8000 Hz, 16000 B/s, align 2, 16 bit, data len 8
FIXTURE_HEX = (
    "524946462c00000057415645"
    "666d7420100000000100" "0100" "401f0000" "803e0000" "0200" "1000"
    "6461746108000000" "0000" "6400" "9cff" "ff7f"
)

pcm16 = arrays(np.int16, st.integers(0, 4000))


def test_fixture_bytes_match_layout():
    assert oracles.wav_bytes([0, 100, -100, 32767]).hex() == FIXTURE_HEX


def test_load_hand_built_wav(tmp_path):
    path = tmp_path / "four.wav"
    path.write_bytes(bytes.fromhex(FIXTURE_HEX))
    sig = load_wav(path)
    assert sig.samples.tolist() == [0, 100, -100, 32767]
    assert sig.sample_rate_hz == 8000


def test_load_empty_data(tmp_path):
    path = tmp_path / "empty.wav"
    path.write_bytes(oracles.wav_bytes([]))
    assert len(load_wav(path)) == 0


def test_stereo_rejected(tmp_path):
    path = tmp_path / "stereo.wav"
    path.write_bytes(oracles.wav_bytes([1, 2, 3, 4], channels=2))
    with pytest.raises(MultiChannel):
        load_wav(path)


def test_bad_magic(tmp_path):
    path = tmp_path / "junk.wav"
    path.write_bytes(b"RIFX" + bytes(40))
    with pytest.raises(NotWav):
        load_wav(path)


def test_float_format_rejected(tmp_path):
    path = tmp_path / "float.wav"
    path.write_bytes(oracles.wav_bytes([0, 0], fmt_tag=3))
    with pytest.raises(UnsupportedEncoding):
        load_wav(path)


def test_truncated_data(tmp_path):
    path = tmp_path / "cut.wav"
    path.write_bytes(oracles.wav_bytes([1, 2, 3, 4, 5])[:-4])
    with pytest.raises(Truncated):
        load_wav(path)


def test_eight_bit_scaled(tmp_path):
    path = tmp_path / "u8.wav"
    path.write_bytes(oracles.wav_bytes([0, 128, 255], bits=8))
    assert load_wav(path).samples.tolist() == [-32768, 0, 127 * 256]


def test_extra_chunks_skipped(tmp_path):
    text = b"INFOICMT\x04\x00\x00\x00abc\x00"
    list_chunk = b"LIST" + struct.pack("<I", len(text)) + text
    fact = b"fact" + struct.pack("<I", 4) + bytes(4)
    path = tmp_path / "extra.wav"
    path.write_bytes(oracles.wav_bytes([5, -5], extra_chunks=list_chunk + fact))
    sig, info = read_wav(path)
    assert sig.samples.tolist() == [5, -5]
    assert info == {"ICMT": "abc"}


def test_other_rate_warns(tmp_path):
    path = tmp_path / "16k.wav"
    path.write_bytes(oracles.wav_bytes([1, 2], rate=16000))
    with pytest.warns(UserWarning):
        sig = load_wav(path)
    assert sig.sample_rate_hz == 16000


def test_missing_file():
    with pytest.raises(IoFailure):
        load_wav("/nonexistent/dir/x.wav")


def test_save_unwritable(tmp_path):
    with pytest.raises(IoFailure):
        save_wav(SpeechSignal([1, 2, 3]), tmp_path / "no" / "such" / "dir.wav")


def test_round_trip_fixture(tmp_path):
    sig = SpeechSignal([0, 100, -100, 32767])
    save_wav(sig, tmp_path / "a.wav")
    assert load_wav(tmp_path / "a.wav") == sig


def test_round_trip_18000_random(tmp_path, rng):
    sig = SpeechSignal(rng.integers(-32768, 32768, 18000, dtype=np.int16))
    save_wav(sig, tmp_path / "r.wav")
    assert load_wav(tmp_path / "r.wav") == sig


def test_info_chunk_round_trip(tmp_path):
    save_wav(SpeechSignal([7]), tmp_path / "i.wav", info={"ICMT": "mode=mask;L=160"})
    sig, info = read_wav(tmp_path / "i.wav")
    assert sig.samples.tolist() == [7]
    assert info["ICMT"] == "mode=mask;L=160"


@given(pcm16)
def test_save_load_identity(tmp_path_factory, samples):
    path = tmp_path_factory.mktemp("rt") / "x.wav"
    sig = SpeechSignal(samples)
    save_wav(sig, path)
    assert load_wav(path) == sig


def test_signal_rejects_out_of_range():
    with pytest.raises(ValueError):
        SpeechSignal(np.array([40000]))
    with pytest.raises(ValueError):
        SpeechSignal([1], sample_rate_hz=0)


def test_signal_is_immutable():
    sig = SpeechSignal([1, 2, 3])
    with pytest.raises(ValueError):
        sig.samples[0] = 9


@pytest.mark.parametrize(
    "n, frame_length, frames, tail",
    [(18000, 160, 112, 80), (160, 160, 1, 0), (0, 160, 0, 0), (319, 160, 1, 159)],
)
def test_frame_counts(n, frame_length, frames, tail):
    fs = frame_signal(SpeechSignal(np.arange(n) % 1000), frame_length)
    assert fs.n_frames == frames
    assert fs.tail.shape[0] == tail
    assert fs.frames.shape == (frames, frame_length)


def test_frame_length_too_small():
    with pytest.raises(FrameLengthTooSmall):
        frame_signal(SpeechSignal([0] * 100), 19)


def test_assemble_tail_only():
    sig = SpeechSignal([1, 2, 3])
    fs = frame_signal(sig, 160)
    assert fs.n_frames == 0
    assert assemble(fs) == sig


@given(pcm16, st.integers(20, 400))
def test_assemble_inverts_framing(samples, frame_length):
    sig = SpeechSignal(samples)
    fs = frame_signal(sig, frame_length)
    assert fs.n_frames * frame_length + fs.tail.shape[0] == len(sig)
    assert fs.tail.shape[0] < frame_length
    assert assemble(fs) == sig
