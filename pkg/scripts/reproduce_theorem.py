"""Run the exact spectral pipeline on the "+-" system and print every intermediate result.

    python3 scripts/reproduce_theorem.py [--signs +-] [-K 64]
"""

import argparse

from difflab import correlation as corr
from difflab.report import spectral_text
from difflab.rudin import SignSequence, derive_substitution


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--signs", default="+-")
    parser.add_argument("-K", type=int, default=64)
    args = parser.parse_args()

    rule = derive_substitution(SignSequence.parse(args.signs))
    report = corr.classify_spectrum(rule, args.K)
    print(spectral_text(report), end="")
    if report.periodicity is not None:
        cert = report.periodicity
        print(f"periodicity certificate: period {cert.period}, {cert.checked} residue checks")


if __name__ == "__main__":
    main()
