"""Reference identities for the "+-" system and classic Rudin-Shapiro.

``run_checks`` evaluates each identity and returns one :class:`CheckResult`
per check; exceptions count as failures so a broken rule file is reported,
not raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
import sympy

from difflab import correlation as corr
from difflab import fourier
from difflab.rudin import STANDARD_WEIGHTS, SignSequence, binary_reduce, coefficients, derive_substitution
from difflab.subst import (
    SubstitutionRule,
    fixed_point_prefix,
    instruction_matrices,
    is_aperiodic_pansiot,
    is_primitive,
    legal_factors,
    perron_data,
    substitution_matrix,
)

SIGMA_IMAGES = {"A": "ABDB", "B": "ABAC", "C": "DCDB", "D": "DCAC"}
RHO_IMAGES = {"A": "AB", "B": "AC", "C": "DB", "D": "DC"}

R_REFERENCE = [
    [[1, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1]],
    [[0, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 0]],
    [[0, 1, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 1, 0]],
    [[0, 0, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 0, 0]],
]
SIGMA_ODD = tuple(Fraction(x, 8) for x in (0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0))
SIGMA_EVEN = tuple(Fraction(x, 8) for x in (1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1))
SIGMA_ZERO = tuple(Fraction(1, 4) if i % 5 == 0 else Fraction(0) for i in range(16))
V1 = (1,) * 16
V2 = (1, 0, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 0, 1)
E1 = ("AA", "BB", "CC", "DD")
E2 = ("AD", "DA", "BC", "CB")
TRANSIENT = ("AB", "AC", "BA", "BD", "CA", "CD", "DB", "DC")
NEW_16 = [1, 1, -1, 1, 1, 1, 1, -1, -1, -1, 1, -1, 1, 1, 1, -1]
RS_8 = [1, 1, 1, -1, 1, 1, -1, 1]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _expect(cond: bool, detail: str) -> str:
    if not cond:
        raise AssertionError(detail)
    return ""


def build_checks(sigma: SubstitutionRule, quick: bool = False) -> list[tuple[str, Callable[[], str]]]:
    rho = SubstitutionRule.from_mapping(RHO_IMAGES)
    plus_minus = SignSequence.parse("+-")

    def derived_rule():
        return _expect(derive_substitution(plus_minus).as_dict() == SIGMA_IMAGES,
                       f"derive('+-') = {derive_substitution(plus_minus)}")

    def rho_rule():
        return _expect(derive_substitution(SignSequence.parse("+")) == rho, "derive('+') != rho")

    def fixed_points():
        w = fixed_point_prefix(sigma, "A", 16)
        _expect(w == "ABDBABACDCACABAC", f"sigma prefix {w}")
        return _expect(fixed_point_prefix(rho, "A", 8) == "ABACABDB", "rho prefix")

    def sequences():
        _expect(list(coefficients(plus_minus, 4)) == NEW_16, "generator '+-'")
        _expect(list(binary_reduce(fixed_point_prefix(sigma, "A", 16))) == NEW_16, "sigma reduction")
        return _expect(list(coefficients(SignSequence.parse("+"), 3)) == RS_8, "generator '+'")

    def instruction():
        rs = instruction_matrices(sigma)
        _expect(rs == R_REFERENCE, f"R_i = {rs}")
        m = substitution_matrix(sigma)
        total = [[sum(r[i][j] for r in rs) for j in range(4)] for i in range(4)]
        return _expect(m == total, "M != sum R_i")

    def primitive():
        return _expect(is_primitive(sigma) == (True, 2), f"primitivity {is_primitive(sigma)}")

    def pansiot():
        pairs = legal_factors(sigma, 2)
        _expect({"BA", "CA"} <= pairs, f"legal pairs {sorted(pairs)}")
        return _expect(is_aperiodic_pansiot(sigma) == (True, "A"), "witness")

    def perron():
        pf = perron_data(sigma)
        return _expect(pf.eigenvalue == 4 and pf.frequencies == (Fraction(1, 4),) * 4, f"{pf}")

    def sigma_hat_at(k: int, want: tuple):
        def check():
            got = corr.sigma_hat(sigma, k).entries
            return _expect(got == want, f"S({k}) = ({', '.join(map(str, got))})")
        return check

    def eq4():
        table = corr.correlation_table(sigma)
        for n in range(1, 65):
            _expect(table(4 * n) == table(4), f"S({4 * n}) != S(4)")
            for r in (1, 2, 3):
                _expect(table(4 * n + r) == table(r), f"S({4 * n + r}) != S({r})")
        return ""

    def classes():
        d = corr.ergodic_decomposition(sigma)
        got = [set(c) for c in d.ergodic_classes]
        _expect(got == [set(E1), set(E2)], f"classes {d.ergodic_classes}")
        return _expect(set(d.transient) == set(TRANSIENT), f"transient {d.transient}")

    def weight_matrix():
        d = corr.ergodic_decomposition(sigma)
        w1, w2 = sympy.symbols("w1 w2")
        v = corr.build_v(d, (w1, w2))
        for p in v.labels:
            want = w1 if p in E1 else w2 if p in E2 else (w1 + w2) / 2
            _expect(sympy.simplify(v[p] - want) == 0, f"v[{p}] = {v[p]}")
        eig = corr.v_eigenvalues(d, (1, w2))
        want = {2 * (1 + w2): 1, 1 - w2: 2, sympy.Integer(0): 1}
        return _expect({sympy.expand(k): m for k, m in eig.items()} == {sympy.expand(k): m for k, m in want.items()},
                       f"eigenvalues {eig}")

    def rays():
        semi = corr.semipositivity_interval(corr.ergodic_decomposition(sigma))
        _expect((semi.lower, semi.upper) == (-1, 1), f"interval [{semi.lower}, {semi.upper}]")
        vecs = [r.vector for r in semi.rays]
        return _expect(vecs == [tuple(map(Fraction, V1)), tuple(map(Fraction, V2))], "extreme rays")

    def fourier_coeffs():
        for k in range(257):
            _expect(corr.ray_fourier_coeff(V1, sigma, k) == 1, f"c_v1({k})")
            if k:
                _expect(corr.ray_fourier_coeff(V2, sigma, k) == 0, f"c_v2({k})")
                _expect(corr.autocorrelation(sigma, STANDARD_WEIGHTS, k) == 0, f"eta({k})")
        return ""

    def verdict():
        rep = corr.classify_spectrum(sigma, 64)
        return _expect(rep.verdict == "purely AC (balanced weights)", rep.verdict)

    checks = [
        ("derive('+-') equals sigma", derived_rule),
        ("derive('+') equals rho", rho_rule),
        ("fixed-point prefixes", fixed_points),
        ("balanced sequences", sequences),
        ("instruction matrices R_0..R_3, M = sum R_i", instruction),
        ("M^2 > 0", primitive),
        ("Pansiot witness A (BA, CA legal)", pansiot),
        ("PF eigenvalue 4, u = (1/4,1/4,1/4,1/4)", perron),
        ("Sigma(0) = diag/4", sigma_hat_at(0, SIGMA_ZERO)),
        ("Sigma(1) reference vector", sigma_hat_at(1, SIGMA_ODD)),
        ("Sigma(2) reference vector", sigma_hat_at(2, SIGMA_EVEN)),
        ("Sigma(3) = Sigma(1)", sigma_hat_at(3, SIGMA_ODD)),
        ("Sigma(4) = Sigma(2)", sigma_hat_at(4, SIGMA_EVEN)),
        ("Sigma(4n+r) periodicity, n <= 64", eq4),
        ("ergodic classes E_1, E_2, T", classes),
        ("v pattern and eigenvalues", weight_matrix),
        ("semi-positivity [-1,1], rays v_1, v_2", rays),
        ("c_v1 = 1, c_v2 = 0, eta = 0 for k <= 256", fourier_coeffs),
        ("purely AC verdict", verdict),
    ]
    if not quick:
        checks += [
            ("oracle: pair counts on 4^9 prefix", lambda: _oracle(sigma)),
            ("root-N at dyadic N, parallelogram identity", _root_n),
        ]
    return checks


def _oracle(sigma: SubstitutionRule) -> str:
    for k in range(9):
        exact = np.array([float(x) for x in corr.sigma_hat(sigma, k).entries])
        err = np.abs(exact - corr.sigma_hat_oracle(sigma, k, 4 ** 9)).max()
        _expect(err <= 1e-3, f"k={k}: max deviation {err:.3g}")
    return ""


def _root_n() -> str:
    for s in ("+", "+-"):
        signs = SignSequence.parse(s)
        for k in range(4, 17):
            ratio = fourier.sup_norm_estimate(coefficients(signs, k), 8).ratio
            _expect(ratio <= math.sqrt(2) + 0.01, f"signs {s}, N=2^{k}: ratio {ratio}")
            err = fourier.parallelogram_check(signs, k, 256)
            _expect(err <= 1e-9, f"signs {s}, k={k}: parallelogram {err}")
    return ""


def run_checks(sigma: SubstitutionRule | None = None, quick: bool = False) -> list[CheckResult]:
    sigma = sigma if sigma is not None else SubstitutionRule.from_mapping(SIGMA_IMAGES)
    results = []
    for name, check in build_checks(sigma, quick):
        try:
            results.append(CheckResult(name, True, check() or ""))
        except Exception as exc:  # noqa: BLE001 - every failure is reported, not raised
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
