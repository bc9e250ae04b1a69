"""Command line interface: ``speechsteg <subcommand> ...``.

Exit codes: 0 success/match, 1 verification failure, 2 usage or data
error, 3 I/O or file-format error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from . import baseline, keystream
from .cipher import CipherMode, decrypt_signal, encrypt_signal, header_info, parse_header_info
from .errors import ConfigError, IoFailure, SpeechStegError, WavError
from .payload import StegoConfig, format_payload_file, parse_payload_file
from .pipeline import EvalSettings, evaluate_corpus, receive, send
from .signal_io import assemble, frame_signal, read_wav, save_wav
from .stego import embed, extract, verify

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3

SEED_ENV = "SPEECHSTEG_SEED_FILE"


class UsageError(SpeechStegError):
    pass


# -- helpers ----------------------------------------------------------------

def _json_default(obj):
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    raise TypeError(type(obj).__name__)


def _emit(record: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "table":
        width = max(len(k) for k in record)
        for key, value in record.items():
            if isinstance(value, float):
                value = f"{value:.6g}"
            out.write(f"{key:<{width}}  {value}\n")
        out.write("\n")
    else:
        out.write(json.dumps(record, default=_json_default) + "\n")


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def _seed(args) -> keystream.KeySeed:
    given = [args.p, args.q, args.m]
    if any(v is not None for v in given):
        if any(v is None for v in given):
            raise UsageError("--p, --q and --m must be given together")
        seed = keystream.validate_seed(args.p, args.q, args.m)
    elif args.passphrase:
        seed = keystream.seed_from_passphrase(args.passphrase)
    else:
        path = args.seed_file or os.environ.get(SEED_ENV)
        if not path:
            raise UsageError(f"no key: pass --seed-file, --p/--q/--m, --passphrase or set {SEED_ENV}")
        seed = keystream.load_seed(path)
    if keystream.is_weak(seed):
        warnings.warn(f"m={seed.m} gives a degenerate keystream", stacklevel=2)
    return seed


def _config(args, header: dict | None = None) -> StegoConfig:
    frame_length = args.frame_length
    if frame_length is None:
        frame_length = int(header["L"]) if header and "L" in header else 160
    return StegoConfig(frame_length=frame_length, divisor=args.divisor)


def _mode(args, header: dict | None = None) -> CipherMode:
    label = args.mode or (header or {}).get("mode") or "scramble+mask"
    return CipherMode.from_label(label)


def _load(path):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        signal, info = read_wav(path)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return signal, info


# -- subcommands ------------------------------------------------------------

def cmd_keygen(args) -> int:
    if args.passphrase:
        seed = keystream.seed_from_passphrase(args.passphrase)
    elif None not in (args.p, args.q, args.m):
        seed = keystream.validate_seed(args.p, args.q, args.m)
    else:
        raise UsageError("keygen needs --passphrase or all of --p/--q/--m")
    if keystream.is_weak(seed) and not args.allow_weak:
        raise ConfigError(f"m={seed.m} gives a degenerate keystream (use --allow-weak to override)")
    if args.output:
        keystream.save_seed(seed, args.output)
    print(json.dumps(seed.as_dict()))
    return EXIT_OK


def cmd_embed(args) -> int:
    cover, _ = _load(args.cover)
    cfg = _config(args)
    payloads = parse_payload_file(_read_text(args.payload))
    result = embed(frame_signal(cover, cfg.frame_length), payloads, cfg)
    save_wav(assemble(result.stego_frames), args.output)
    _emit({"capacity": result.stego_frames.n_frames, "embedded_count": result.embedded_count}, args.format)
    return EXIT_OK


def cmd_extract(args) -> int:
    signal, _ = _load(args.input)
    cfg = _config(args)
    payloads = extract(frame_signal(signal, cfg.frame_length), args.count, cfg)
    text = format_payload_file(payloads)
    if args.output:
        Path(args.output).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    signal, _ = _load(args.input)
    cfg, mode, seed = _config(args), _mode(args), _seed(args)
    enc = encrypt_signal(frame_signal(signal, cfg.frame_length), seed, mode)
    save_wav(assemble(enc), args.output, header_info(mode, cfg.frame_length, cfg.slots_per_frame))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    signal, info = _load(args.input)
    header = parse_header_info(info)
    cfg, mode, seed = _config(args, header), _mode(args, header), _seed(args)
    plain = decrypt_signal(frame_signal(signal, cfg.frame_length), seed, mode)
    save_wav(assemble(plain), args.output)
    return EXIT_OK


def cmd_send(args) -> int:
    cover, _ = _load(args.cover)
    cfg, mode, seed = _config(args), _mode(args), _seed(args)
    payloads = parse_payload_file(_read_text(args.payload))
    result = send(cover, payloads, seed, mode, cfg)
    save_wav(result.encrypted, args.output, header_info(mode, cfg.frame_length, cfg.slots_per_frame))
    if args.stego_output:
        save_wav(result.stego, args.stego_output)
    _emit(
        {
            "capacity": result.capacity,
            "embedded_count": result.embedded_count,
            "mode": mode.label,
            **result.report.as_dict(),
        },
        args.format,
    )
    return EXIT_OK


def cmd_receive(args) -> int:
    signal, info = _load(args.input)
    header = parse_header_info(info)
    cfg, mode, seed = _config(args, header), _mode(args, header), _seed(args)
    expected = parse_payload_file(_read_text(args.expected)) if args.expected else None
    count = args.count if args.count is not None else (len(expected) if expected else None)
    if count is None:
        raise UsageError("receive needs --count or --expected")
    got, _ = receive(signal, seed, count, mode, cfg)
    sys.stdout.write(format_payload_file(got))
    if expected is None:
        return EXIT_OK
    if len(expected) != count:
        raise UsageError(f"--count {count} disagrees with {len(expected)} expected payloads")
    report = verify(expected, got)
    _emit(report.as_dict(), args.format, sys.stderr if args.format == "table" else sys.stdout)
    return EXIT_OK if report.matched else EXIT_MISMATCH


def cmd_evaluate(args) -> int:
    from .errors import EmptyCorpus

    corpus_dir = Path(args.corpus)
    if not corpus_dir.is_dir():
        raise WavError(f"{corpus_dir}: not a directory")
    files = sorted(corpus_dir.glob("*.wav"))
    if not files:
        raise EmptyCorpus(f"{corpus_dir}: no .wav files")
    named = [(f.name, _load(f)[0]) for f in files]
    settings = EvalSettings(
        seed=_seed(args),
        mode=_mode(args),
        cfg=_config(args),
        payloads_per_signal=args.payloads,
        threshold=args.threshold,
        min_interval=args.min_interval,
        baseline_snr_db=args.snr_db,
        rng_seed=args.rng_seed,
    )
    records, means = evaluate_corpus(named, settings)
    out = open(args.report, "w") if args.report else sys.stdout
    try:
        for rec in records + means:
            _emit(rec.as_dict(), args.format, out)
    finally:
        if args.report:
            out.close()
    return EXIT_OK


def cmd_synth(args) -> int:
    from .synth import corpus

    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for i, sig in enumerate(corpus(args.count, args.rng_seed)):
        save_wav(sig, out / f"synth_{i:02d}.wav")
    print(f"wrote {args.count} signals to {out}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_geometry(p):
    p.add_argument("--frame-length", type=int, default=None, help="samples per frame (default 160)")
    p.add_argument("--divisor", type=int, default=1000, help="digit scaling divisor (default 1000)")


def _add_seed(p):
    g = p.add_argument_group("key")
    g.add_argument("--seed-file", help=f"JSON seed file with p, q, m (default: ${SEED_ENV})")
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--passphrase", help="derive the three primes from a passphrase")


def _add_mode(p):
    p.add_argument("--mode", default=None, help="scramble, mask or scramble+mask (default)")


def _add_format(p):
    p.add_argument("--format", choices=("json", "table"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="speechsteg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="write a seed file")
    p.add_argument("--passphrase")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--allow-weak", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("embed", help="hide payloads in a cover (no encryption)")
    p.add_argument("cover")
    p.add_argument("payload")
    p.add_argument("-o", "--output", required=True)
    _add_geometry(p)
    _add_format(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="read payloads from a decrypted stego signal")
    p.add_argument("input")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("-o", "--output")
    _add_geometry(p)
    p.set_defaults(func=cmd_extract)

    for name, func, text in (
        ("encrypt", cmd_encrypt, "encrypt every full frame"),
        ("decrypt", cmd_decrypt, "decrypt every full frame"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("input")
        p.add_argument("-o", "--output", required=True)
        _add_geometry(p)
        _add_seed(p)
        _add_mode(p)
        p.set_defaults(func=func)

    p = sub.add_parser("send", help="embed then encrypt")
    p.add_argument("cover")
    p.add_argument("payload")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--stego-output", help="also write the unencrypted stego signal")
    _add_geometry(p)
    _add_seed(p)
    _add_mode(p)
    _add_format(p)
    p.set_defaults(func=cmd_send)

    p = sub.add_parser("receive", help="decrypt, extract and optionally verify")
    p.add_argument("input")
    p.add_argument("--count", type=int)
    p.add_argument("--expected", help="payload file to verify against")
    _add_geometry(p)
    _add_seed(p)
    _add_mode(p)
    _add_format(p)
    p.set_defaults(func=cmd_receive)

    p = sub.add_parser("evaluate", help="proposed vs silence-interval metrics over a WAV directory")
    p.add_argument("corpus")
    p.add_argument("--payloads", type=int, default=None, help="payloads per signal (default: fill every frame)")
    p.add_argument("--threshold", type=float, default=baseline.DEFAULT_THRESHOLD)
    p.add_argument("--min-interval", type=int, default=baseline.DEFAULT_MIN_INTERVAL)
    p.add_argument("--snr-db", type=float, default=40.0,
                   help="AWGN level for the baseline channel; 'inf' for a clean channel")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--report", help="write records here instead of stdout")
    _add_geometry(p)
    _add_seed(p)
    _add_mode(p)
    _add_format(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="write a synthetic speech-like corpus")
    p.add_argument("output")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WavError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SpeechStegError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
