"""Schoolbook against Kronecker-substitution multiplication.

    python benchmarks/bench_mul.py [--max-len 512] [--repeat 5]

Prints the best time of each method per length.  The crossover picks
KRONECKER_THRESHOLD in qrr.series.
"""

import argparse
import random
import timeit

from qrr.series import KRONECKER_THRESHOLD, _kronecker, _schoolbook


def operands(length, bits, rng):
    return [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(length)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=512)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--bits", type=int, default=64, help="coefficient size")
    args = ap.parse_args()
    rng = random.Random(1)
    print(f"threshold in use: {KRONECKER_THRESHOLD}")
    print(f"{'len':>6} {'schoolbook ms':>14} {'kronecker ms':>13} {'ratio':>7}")
    lengths = list(range(8, 32, 4)) + [32 << k for k in range(args.max_len.bit_length())]
    for n in (m for m in lengths if m <= args.max_len):
        a, b = operands(n, args.bits, rng), operands(n, args.bits, rng)
        assert _schoolbook(a, b, n) == _kronecker(a, b, n)
        number = max(1, 2000 // n)
        t_s = min(timeit.repeat(lambda: _schoolbook(a, b, n), number=number, repeat=args.repeat)) / number
        t_k = min(timeit.repeat(lambda: _kronecker(a, b, n), number=number, repeat=args.repeat)) / number
        print(f"{n:>6} {t_s * 1e3:>14.4f} {t_k * 1e3:>13.4f} {t_s / t_k:>7.2f}")


if __name__ == "__main__":
    main()
