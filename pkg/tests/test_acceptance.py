"""Acceptance gate: one test per criterion, each at its stated tolerance.

A one-line PASS/FAIL summary per criterion is printed at the end of the run
(see ``conftest.py``).
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest
import sympy

from difflab import correlation as corr
from difflab import fourier
from difflab.rudin import STANDARD_WEIGHTS, SignSequence, binary_reduce, coefficients, derive_substitution, sequence_prefix
from difflab.subst import (
    fixed_point_prefix,
    instruction_matrices,
    is_aperiodic_pansiot,
    is_primitive,
    legal_factors,
    perron_data,
    substitution_matrix,
)

SIGMA = {"A": "ABDB", "B": "ABAC", "C": "DCDB", "D": "DCAC"}
NEW_16 = [1, 1, -1, 1, 1, 1, 1, -1, -1, -1, 1, -1, 1, 1, 1, -1]
RS_8 = [1, 1, 1, -1, 1, 1, -1, 1]
R = [
    [[1, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1]],
    [[0, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 0]],
    [[0, 1, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 1, 0]],
    [[0, 0, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 0, 0]],
]
ODD = tuple(Fraction(x, 8) for x in (0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0))
EVEN = tuple(Fraction(x, 8) for x in (1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1))
V1 = (1,) * 16
V2 = (1, 0, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 0, 1)


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def report(label, elapsed=None):
    extra = f" ({elapsed:.3f} s)" if elapsed is not None else ""
    print(f"PASS {label}{extra}")


def test_c01_derived_rule():
    signs = SignSequence.parse("+-")
    best = min(timed(lambda: derive_substitution(signs))[1] for _ in range(20))
    assert derive_substitution(signs).as_dict() == SIGMA
    assert best < 1e-3
    report("C1 derive('+-') equals the reference images", best)


def test_c02_sequences():
    assert list(sequence_prefix(SignSequence.parse("+-"), 16)) == NEW_16
    assert list(sequence_prefix(SignSequence.parse("+"), 8)) == RS_8
    report("C2 first 16 / 8 balanced terms")


def test_c03_matrices_and_aperiodicity(sigma):
    rs = instruction_matrices(sigma)
    assert rs == R
    m = substitution_matrix(sigma)
    assert m == [[sum(r[i][j] for r in R) for j in range(4)] for i in range(4)]
    m2 = np.array(m, dtype=np.int64) @ np.array(m, dtype=np.int64)
    assert (m2 > 0).all() and is_primitive(sigma) == (True, 2)
    assert {"BA", "CA"} <= legal_factors(sigma, 2)
    assert is_aperiodic_pansiot(sigma) == (True, "A")
    report("C3 R_i, M = sum R_i, M^2 > 0, Pansiot witness A")


def test_c04_perron(sigma):
    pf = perron_data(sigma)
    assert (pf.eigenvalue, pf.frequencies) == (4, (Fraction(1, 4),) * 4)
    report("C4 PF eigenvalue 4, uniform frequencies")


def test_c05_pair_correlations(sigma):
    corr.correlation_table.cache_clear()

    def work():
        assert corr.sigma_hat(sigma, 1).entries == ODD == corr.sigma_hat(sigma, 3).entries
        assert corr.sigma_hat(sigma, 2).entries == EVEN == corr.sigma_hat(sigma, 4).entries
        for n in range(1, 65):
            for r in range(4):
                assert corr.sigma_hat(sigma, 4 * n + r).entries == corr.sigma_hat(sigma, r if r else 4).entries

    _, elapsed = timed(work)
    assert elapsed < 1.0
    report("C5 reference S(1..4) and 4-periodicity for n <= 64", elapsed)


def test_c06_decomposition(sigma):
    d = corr.ergodic_decomposition(sigma)
    assert [set(c) for c in d.ergodic_classes] == [{"AA", "BB", "CC", "DD"}, {"AD", "DA", "BC", "CB"}]
    assert set(d.transient) == {"AB", "AC", "BA", "BD", "CA", "CD", "DB", "DC"}
    report("C6 ergodic classes E_1, E_2 and transient set T")


def test_c07_weight_matrix_and_rays(sigma):
    d = corr.ergodic_decomposition(sigma)
    w1, w2 = sympy.symbols("w1 w2")
    v = corr.build_v(d, (w1, w2))
    for p in d.transient:
        assert sympy.simplify(v[p] - (w1 + w2) / 2) == 0
    semi = corr.semipositivity_interval(d)
    assert (semi.lower, semi.upper) == (-1, 1)
    assert [r.vector for r in semi.rays] == [V1, V2]
    report("C7 transient entries (w1+w2)/2, interval [-1, 1], rays v_1, v_2")


def test_c08_fourier_coefficients_and_verdict(sigma):
    def work():
        for k in range(257):
            assert corr.ray_fourier_coeff(V1, sigma, k) == 1
            if k:
                assert corr.ray_fourier_coeff(V2, sigma, k) == 0
                assert corr.autocorrelation(sigma, STANDARD_WEIGHTS, k) == 0
        return corr.classify_spectrum(sigma, 64)

    rep, elapsed = timed(work)
    assert rep.verdict == "purely AC (balanced weights)"
    assert elapsed < 5.0
    report("C8 c_v1 = 1, c_v2 = eta = 0 for k <= 256, purely AC verdict", elapsed)


def test_c09_oracles(sigma):
    def work():
        worst = 0.0
        for k in range(9):
            exact = np.array([float(x) for x in corr.sigma_hat(sigma, k).entries])
            worst = max(worst, np.abs(exact - corr.sigma_hat_oracle(sigma, k, 4 ** 9)).max())
        seq = binary_reduce(fixed_point_prefix(sigma, "A", 4 ** 9), STANDARD_WEIGHTS)
        eta = max(abs(fourier.empirical_autocorrelation(seq, k)
                      - float(corr.autocorrelation(sigma, STANDARD_WEIGHTS, k))) for k in range(17))
        return worst, eta

    (worst, eta), elapsed = timed(work)
    assert worst <= 1e-3 and eta <= 1e-3
    assert elapsed < 30.0
    report(f"C9 pair-count oracle {worst:.2e}, autocorrelation oracle {eta:.2e}", elapsed)


def test_c10_root_n_and_parallelogram():
    def work():
        ratio, para = 0.0, 0.0
        for s in ("+", "+-"):
            signs = SignSequence.parse(s)
            for k in range(4, 17):
                ratio = max(ratio, fourier.sup_norm_estimate(coefficients(signs, k), 8).ratio)
            for k in range(17):
                para = max(para, fourier.parallelogram_check(signs, k, 256))
        return ratio, para

    (ratio, para), elapsed = timed(work)
    assert ratio <= math.sqrt(2) + 0.01
    assert para <= 1e-9
    assert elapsed < 60.0
    report(f"C10 max root-N ratio {ratio:.6f}, parallelogram error {para:.1e}", elapsed)


def test_c11_periodogram():
    seq = sequence_prefix(SignSequence.parse("+-"), 4 ** 8)
    intensity = fourier.periodogram(seq)
    bins = fourier.binned_means(intensity, 64)
    assert 0.9 <= bins.min() and bins.max() <= 1.1
    assert abs(intensity.mean() - 1) <= 1e-9
    ones = fourier.binned_means(fourier.periodogram(np.ones(4 ** 8)), 64)
    assert ones[0] == pytest.approx(64) and np.abs(ones[1:]).max() < 1e-9
    report(f"C11 binned periodogram in [{bins.min():.4f}, {bins.max():.4f}], all-ones control in bin 0")


@pytest.mark.parametrize("signs", ["+", "-", "+-", "-+", "+--", "-++", "++-"])
def test_c12_generator_substitution_consistency(signs):
    s = SignSequence.parse(signs)
    rule = derive_substitution(s)
    word = fixed_point_prefix(rule, "A", 2 ** 12)
    assert np.array_equal(coefficients(s, 12), binary_reduce(word, STANDARD_WEIGHTS))
    report(f"C12 generator equals substitution fixed point up to 2^12 for {signs!r}")
