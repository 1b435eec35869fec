"""difflab command line.

    difflab generate --signs "+-" -N 16
    difflab derive   --signs "+-"
    difflab analyze  --file rule.sub
    difflab spectra  --signs "+-" -K 64 --format json
    difflab autocorr --signs "+-" -K 16 -N 262144 --format csv
    difflab diffract --signs "+-" -N 65536 --format csv          # periodogram
    difflab diffract --signs "+-" -N 4096 --sup --format csv     # sup-norm scan
    difflab verify [--quick] [--file rule.sub]

Exit codes: 0 success; 1 failed check or runtime error; 2 usage error, or
``spectra`` finished with an Inconclusive verdict; 3 ``spectra`` met more than
two ergodic classes.
"""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

import numpy as np

from difflab import correlation as corr
from difflab import fourier, report
from difflab.regression import run_checks
from difflab.rudin import STANDARD_WEIGHTS, SignSequence, binary_reduce, derive_substitution, parse_weights, sequence_prefix
from difflab.subst import SubstitutionRule, fixed_point_prefix, format_rule, parse_rule

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_CLASSES = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rule_from(args) -> SubstitutionRule:
    if args.file:
        try:
            return parse_rule(Path(args.file).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read rule file {args.file}: {exc}") from None
    return derive_substitution(_signs(args))


def _signs(args) -> SignSequence:
    try:
        return SignSequence.parse(args.signs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _weights(args, rule: SubstitutionRule) -> dict[str, int] | None:
    if getattr(args, "weights", None):
        try:
            w = parse_weights(args.weights)
        except ValueError as exc:
            raise UsageError(f"bad --weights: {exc}") from None
        if set(w) != set(rule.alphabet):
            raise UsageError("--weights must assign every letter")
        return w
    if set(rule.alphabet) == set(STANDARD_WEIGHTS):
        return dict(STANDARD_WEIGHTS)
    return None


def _sequence(args, n: int) -> np.ndarray:
    if args.file:
        rule = _rule_from(args)
        w = _weights(args, rule)
        if w is None:
            raise UsageError("rule alphabet is not ABCD; pass --weights")
        return binary_reduce(fixed_point_prefix(rule, rule.alphabet[0], n), w)
    return sequence_prefix(_signs(args), n)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, first, second) -> str:
    buf = io.StringIO()
    fourier.write_csv(buf, header, first, second)
    return buf.getvalue()


def cmd_generate(args) -> int:
    if args.N < 1:
        raise UsageError("-N must be positive")
    seq = [int(x) for x in _sequence(args, args.N)]
    if args.format == "json":
        _emit(args, report.dumps({"N": args.N, "sequence": seq}))
    elif args.format == "csv":
        _emit(args, _csv(("n", "value"), range(len(seq)), seq))
    else:
        _emit(args, ",".join(str(x) for x in seq) + "\n")
    return EXIT_OK


def cmd_derive(args) -> int:
    rule = _rule_from(args)
    if args.format == "json":
        _emit(args, report.dumps(report.rule_dict(rule)))
    else:
        _emit(args, format_rule(rule))
    return EXIT_OK


def cmd_analyze(args) -> int:
    doc = report.analysis_dict(_rule_from(args))
    if args.format == "json":
        _emit(args, report.dumps(doc))
        return EXIT_OK
    lines = [f"rule: {_rule_from(args)}", f"length: {doc['length']}",
             f"substitution matrix: {doc['substitution_matrix']}"]
    for i, r in enumerate(doc["instruction_matrices"]):
        lines.append(f"R_{i}: {r}")
    lines.append(f"primitive: {doc['primitive']} (exponent {doc['primitivity_exponent']})")
    if doc["primitive"]:
        lines.append(f"aperiodic (Pansiot): {doc['pansiot']['aperiodic']} witness {doc['pansiot']['witness']}")
        lines.append(f"PF eigenvalue {doc['perron']['eigenvalue']}, u = ({', '.join(doc['perron']['frequencies'])})")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_spectra(args) -> int:
    rule = _rule_from(args)
    try:
        rep = corr.classify_spectrum(rule, args.K, _weights(args, rule))
    except corr.UnsupportedClassCount as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASSES
    if args.format == "json":
        _emit(args, report.dumps(report.spectral_dict(rep)))
    elif args.format == "csv":
        ks = list(range(args.K + 1))
        cols = [sv.coeffs for sv in rep.rays] + [rep.balanced.coeffs]
        header = ["k"] + [sv.name for sv in rep.rays] + ["eta"]
        rows = [",".join(header)] + [",".join([str(k)] + [report.frac(c[k]) for c in cols]) for k in ks]
        _emit(args, "\n".join(rows) + "\n")
    else:
        _emit(args, report.spectral_text(rep))
    return EXIT_INCONCLUSIVE if rep.inconclusive else EXIT_OK


def cmd_autocorr(args) -> int:
    rule = _rule_from(args)
    w = _weights(args, rule)
    if w is None:
        raise UsageError("rule alphabet is not ABCD; pass --weights")
    exact = [corr.autocorrelation(rule, w, k) for k in range(args.K + 1)]
    empirical = None
    if args.N:
        seq = binary_reduce(fixed_point_prefix(rule, rule.alphabet[0], args.N), w)
        empirical = [fourier.empirical_autocorrelation(seq, k) for k in range(args.K + 1)]
    if args.format == "json":
        doc = {"rule": report.rule_dict(rule), "weights": w, "eta": report.fracs(exact)}
        if empirical is not None:
            doc["empirical"] = {"N": args.N, "eta": empirical}
        _emit(args, report.dumps(doc))
    else:
        header = "k,exact" + (",empirical" if empirical is not None else "")
        rows = [header]
        for k, e in enumerate(exact):
            row = f"{k},{report.frac(e)}"
            if empirical is not None:
                row += f",{fourier.format_number(empirical[k])}"
            rows.append(row)
        _emit(args, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_diffract(args) -> int:
    seq = _sequence(args, args.N)
    if args.sup:
        res = fourier.sup_norm_estimate(seq, args.oversample)
        if args.format == "csv":
            theta, mags = fourier.sup_scan(seq, args.oversample)
            _emit(args, _csv(("theta", "magnitude"), theta, mags))
        else:
            doc = {"N": res.N, "oversample": res.oversample, "sup_estimate": res.sup_estimate,
                   "ratio": res.ratio, "upper_bound": res.upper_bound, "argmax_theta": res.argmax_theta}
            _emit(args, report.dumps(doc) if args.format == "json"
                  else "".join(f"{k}: {v}\n" for k, v in doc.items()))
        return EXIT_OK
    intensity = fourier.periodogram(seq)
    if args.format == "csv":
        _emit(args, _csv(("freq_index", "intensity"), range(len(intensity)), intensity))
        return EXIT_OK
    doc = {"N": len(seq), "mean": float(intensity.mean())}
    if len(intensity) % args.bins == 0:
        b = fourier.binned_means(intensity, args.bins)
        doc.update(bins=args.bins, bin_min=float(b.min()), bin_max=float(b.max()), bin_means=b.tolist())
    if args.format == "json":
        _emit(args, report.dumps(doc))
    else:
        _emit(args, "".join(f"{k}: {v}\n" for k, v in doc.items() if k != "bin_means"))
    return EXIT_OK


def cmd_verify(args) -> int:
    sigma = _rule_from(args) if args.file else None
    results = run_checks(sigma, quick=args.quick)
    width = max(len(r.name) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}".rstrip() for r in results]
    if args.format == "json":
        _emit(args, report.dumps([{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]))
    else:
        _emit(args, "\n".join(lines) + "\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: {'; '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="difflab", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, source=True, formats=("text", "json")):
        p = sub.add_parser(name, help=help)
        if source:
            g = p.add_mutually_exclusive_group(required=name != "verify")
            g.add_argument("--signs", help='periodic sign pattern, e.g. "+-"')
            g.add_argument("--file", help="substitution rule file")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write output here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("generate", cmd_generate, "emit the balanced +-1 sequence", formats=("text", "json", "csv"))
    p.add_argument("-N", type=int, required=True, help="number of terms")
    p.add_argument("--weights", help="letter weights for --file rules, e.g. A=1,B=1,C=-1,D=-1")

    add("derive", cmd_derive, "emit the substitution rule for a sign pattern")
    add("analyze", cmd_analyze, "primitivity, aperiodicity, Perron-Frobenius data")

    p = add("spectra", cmd_spectra, "pair correlations and spectral classification",
            formats=("text", "json", "csv"))
    p.add_argument("-K", type=int, default=64, help="distance horizon")
    p.add_argument("--weights")

    p = add("autocorr", cmd_autocorr, "exact (and optionally empirical) autocorrelation",
            formats=("csv", "json"))
    p.add_argument("-K", type=int, default=16)
    p.add_argument("-N", type=int, default=0, help="prefix length for the empirical column")
    p.add_argument("--weights")

    p = add("diffract", cmd_diffract, "periodogram or sup-norm scan", formats=("text", "json", "csv"))
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--oversample", type=int, default=8)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--sup", action="store_true", help="sup-norm scan instead of periodogram")
    p.add_argument("--weights")

    p = add("verify", cmd_verify, "run the reference identity checks")
    p.add_argument("--quick", action="store_true", help="skip the 4^9 oracle and root-N scans")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, fourier.FFTBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
