"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--frames 2000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from speechsteg import _kernels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--frames", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba unavailable (or SPEECHSTEG_DISABLE_NUMBA set); nothing to compare")

    rng = np.random.default_rng(0)
    n, width = args.frames, 160
    frames = rng.integers(-32768, 32768, (n, width)).astype(np.int16)
    swaps = _kernels.swap_table(rng.integers(1, 10, (n, width)))
    a = rng.normal(0, 0.05, n * width)
    b = a + rng.normal(0, 0.005, n * width)
    c1, c2 = 0.02**2, 0.06**2

    cases = {
        "keystream": (
            lambda: _kernels.keystream_numba(1009, 1013, 1019, 0, n, width),
            lambda: _kernels.keystream_numpy(1009, 1013, 1019, 0, n, width),
        ),
        "scramble": (
            lambda: _kernels.scramble_numba(frames, swaps),
            lambda: _kernels.scramble_numpy(frames, swaps),
        ),
        "unscramble": (
            lambda: _kernels.unscramble_numba(frames, swaps),
            lambda: _kernels.unscramble_numpy(frames, swaps),
        ),
        "ssim_windows": (
            lambda: _kernels.ssim_windows_numba(a, b, 160, 80, c1, c2),
            lambda: _kernels.ssim_windows_numpy(a, b, 160, 80, c1, c2),
        ),
    }
    print(f"{n} frames x {width} samples, best of {args.repeat}")
    print(f"{'kernel':<14}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, (fast, slow) in cases.items():
        fast()  # compile
        t_fast = min(timeit.repeat(fast, number=1, repeat=args.repeat)) * 1e3
        t_slow = min(timeit.repeat(slow, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<14}{t_fast:>12.2f}{t_slow:>12.2f}{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
