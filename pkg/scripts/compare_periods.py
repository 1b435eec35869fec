"""Classify every sign pattern up to a given period and summarise the results.

For each pattern: substitution length, number of ergodic pair classes, the
certified correlation period, the semi-positivity interval and the verdict.

    python3 scripts/compare_periods.py --max-period 3
"""

import argparse
import itertools

from difflab import correlation as corr
from difflab.rudin import SignSequence, derive_substitution


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-period", type=int, default=3)
    parser.add_argument("-K", type=int, default=32)
    args = parser.parse_args()

    print(f"{'signs':<8}{'L':>5}{'classes':>9}{'period':>8}  interval    verdict")
    for p in range(1, args.max_period + 1):
        for combo in itertools.product("+-", repeat=p):
            signs = "".join(combo)
            rule = derive_substitution(SignSequence.parse(signs))
            rep = corr.classify_spectrum(rule, args.K)
            period = rep.periodicity.period if rep.periodicity else "-"
            semi = rep.semipositivity
            interval = f"[{semi.lower}, {semi.upper}]" if semi and semi.lower is not None else "-"
            print(f"{signs:<8}{rule.length:>5}{len(rep.decomposition.ergodic_classes):>9}{period!s:>8}  "
                  f"{interval:<11} {rep.verdict}")


if __name__ == "__main__":
    main()
