"""Sup-norm ratio sup|f_N|/sqrt(N) over dyadic and non-dyadic prefix lengths.

At N = 2^k the ratio is bounded by sqrt(2); between powers of two it is
larger but stays bounded.  Prints a CSV table to stdout.

    python3 scripts/root_n_scan.py --signs + +- +-- --kmax 16
"""

import argparse
import math

from difflab import fourier
from difflab.rudin import SignSequence, sequence_prefix


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--signs", nargs="+", default=["+", "+-"])
    parser.add_argument("--kmax", type=int, default=14)
    parser.add_argument("--oversample", type=int, default=8)
    args = parser.parse_args()

    print("signs,N,ratio,upper_bound_ratio")
    for s in args.signs:
        signs = SignSequence.parse(s)
        lengths = sorted({n for k in range(2, args.kmax + 1) for n in (2 ** k, 3 * 2 ** (k - 2), 5 * 2 ** (k - 2))})
        for n in lengths:
            res = fourier.sup_norm_estimate(sequence_prefix(signs, n), args.oversample)
            print(f"{s},{n},{res.ratio:.6f},{res.upper_bound / math.sqrt(n):.6f}")


if __name__ == "__main__":
    main()
