"""Exact pair correlations and the spectral classification built on them.

``sigma_hat(rule, k)`` is the vector of frequencies of ordered letter pairs
``(u_n, u_{n+k})`` along the fixed point, indexed lexicographically
(AA, AB, ..., DD).  Writing ``m = L*n + i`` and ``divmod(i + k, L) = (q, j)``
gives the renormalisation

    S(k) = 1/L * sum_i (R_i (x) R_j) S(q),

which for ``k = 1`` is a nonsingular linear system in ``S(1)`` and otherwise
expresses ``S(k)`` through strictly smaller distances.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import networkx as nx
import numpy as np
import sympy

from difflab import exact
from difflab.subst import (
    NotPrimitiveError,
    SubstitutionRule,
    fixed_point_prefix,
    is_aperiodic_pansiot,
    is_primitive,
    perron_data,
)

Vector = tuple[Fraction, ...]


class UnsupportedClassCount(ValueError):
    pass


def pair_labels(rule: SubstitutionRule) -> list[str]:
    return [a + b for a, b in itertools.product(rule.alphabet, repeat=2)]


def carry_indices(length: int, k: int) -> set[int]:
    """Positions ``i`` of an image whose partner at distance ``k`` lies ``q >= 1`` blocks on."""
    return {i for i in range(length) if i + k >= length}


@dataclass(frozen=True)
class CorrVector:
    k: int
    labels: tuple[str, ...]
    entries: Vector

    def __getitem__(self, pair: str) -> Fraction:
        return self.entries[self.labels.index(pair)]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


class PairCorrelations:
    """Memoised table of ``S(k)`` for one primitive rule."""

    def __init__(self, rule: SubstitutionRule):
        if rule.length < 2 or not is_primitive(rule)[0]:
            raise NotPrimitiveError(f"pair correlations need a primitive rule of length >= 2: {rule}")
        self.rule = rule
        d, L = rule.size, rule.length
        self._d = d
        idx = [[rule.index(w[i]) for w in rule.images] for i in range(L)]
        # _maps[i][j][g*d + h] = target pair index of (g, h) under (R_i, R_j)
        self._maps = [[tuple(idx[i][g] * d + idx[j][h] for g in range(d) for h in range(d))
                       for j in range(L)] for i in range(L)]
        u = perron_data(rule).frequencies
        zero = Fraction(0)
        self._table: dict[int, Vector] = {
            0: tuple(u[a] if a == b else zero for a in range(d) for b in range(d)),
        }
        self._table[1] = self._solve_distance_one()

    def _push(self, i: int, j: int, x: Sequence, out: list) -> None:
        for src, tgt in enumerate(self._maps[i][j]):
            if x[src]:
                out[tgt] += x[src]

    def renormalise(self, r: int, here: Vector, nxt: Vector) -> Vector:
        """``S(L*n + r)`` from ``S(n)`` and ``S(n+1)``, for ``0 <= r <= L``."""
        L = self.rule.length
        out = [Fraction(0)] * len(here)
        for i in range(L):
            q, j = divmod(i + r, L)
            self._push(i, j, here if q == 0 else nxt, out)
        return tuple(x / L for x in out)

    def _solve_distance_one(self) -> Vector:
        L = self.rule.length
        n = self._d ** 2
        rhs = [Fraction(0)] * n
        for i in range(L - 1):
            self._push(i, i + 1, self._table[0], rhs)
        rhs = [x / L for x in rhs]
        a = exact.identity(n)
        for src, tgt in enumerate(self._maps[L - 1][0]):
            a[tgt][src] -= Fraction(1, L)
        return tuple(exact.solve(a, rhs))

    def __call__(self, k: int) -> Vector:
        if k < 0:
            raise ValueError("distance must be nonnegative")
        if k not in self._table:
            n, r = divmod(k, self.rule.length)
            here = self(n)
            # r == 0 never reaches S(n+1); asking for it would recurse on k itself when n + 1 == k
            self._table[k] = self.renormalise(r, here, self(n + 1) if r else here)
        return self._table[k]


@functools.lru_cache(maxsize=64)
def correlation_table(rule: SubstitutionRule) -> PairCorrelations:
    return PairCorrelations(rule)


def sigma_hat(rule: SubstitutionRule, k: int) -> CorrVector:
    return CorrVector(k, tuple(pair_labels(rule)), correlation_table(rule)(k))


def sigma_hat_oracle(rule: SubstitutionRule, k: int, n: int, seed: str = "A") -> np.ndarray:
    """Empirical pair frequencies at distance ``k`` over a length-``n`` prefix."""
    if n < k + 1:
        raise ValueError("prefix must be longer than the distance")
    word = fixed_point_prefix(rule, seed, n)
    lut = np.zeros(128, dtype=np.int64)
    for i, a in enumerate(rule.alphabet):
        lut[ord(a)] = i
    codes = lut[np.frombuffer(word.encode("ascii"), dtype=np.uint8)]
    d = rule.size
    pairs = codes[: n - k] * d + codes[k:]
    return np.bincount(pairs, minlength=d * d) / (n - k)


# -- bi-substitution and its ergodic classes ---------------------------------

@dataclass(frozen=True)
class BiSubstitution:
    """``sigma (x) sigma`` acting on ordered pairs; images are tuples of pair labels."""

    pairs: tuple[str, ...]
    images: tuple[tuple[str, ...], ...]

    def image(self, pair: str) -> tuple[str, ...]:
        return self.images[self.pairs.index(pair)]

    @property
    def length(self) -> int:
        return len(self.images[0])


def bisubstitution(rule: SubstitutionRule) -> BiSubstitution:
    pairs = tuple(pair_labels(rule))
    images = tuple(tuple(x + y for x, y in zip(rule.image(p[0]), rule.image(p[1]))) for p in pairs)
    return BiSubstitution(pairs, images)


@dataclass(frozen=True)
class BisubstDecomposition:
    rule: SubstitutionRule
    ergodic_classes: tuple[tuple[str, ...], ...]
    transient: tuple[str, ...]

    def class_of(self, pair: str) -> int | None:
        for c, members in enumerate(self.ergodic_classes):
            if pair in members:
                return c
        return None


def _pair_graph(rule: SubstitutionRule) -> nx.DiGraph:
    bi = bisubstitution(rule)
    g = nx.DiGraph()
    g.add_nodes_from(bi.pairs)
    for p, image in zip(bi.pairs, bi.images):
        g.add_edges_from((p, q) for q in image)
    return g


def ergodic_decomposition(rule: SubstitutionRule) -> BisubstDecomposition:
    """Closed strongly connected components of the pair graph, plus the rest."""
    if not is_primitive(rule)[0]:
        raise NotPrimitiveError(f"substitution is not primitive: {rule}")
    order = {p: i for i, p in enumerate(pair_labels(rule))}
    g = _pair_graph(rule)
    cond = nx.condensation(g)
    classes = []
    for node in cond.nodes:
        if cond.out_degree(node) == 0:
            classes.append(tuple(sorted(cond.nodes[node]["members"], key=order.__getitem__)))
    classes.sort(key=lambda members: order[members[0]])
    closed = {p for members in classes for p in members}
    transient = tuple(p for p in order if p not in closed)
    return BisubstDecomposition(rule, tuple(classes), transient)


def absorption_probabilities(decomp: BisubstDecomposition) -> dict[str, tuple[Fraction, ...]]:
    """Probability that each pair is absorbed into each class.

    The chain picks a position ``i`` uniformly and moves ``ab`` to
    ``(sigma(a)_i, sigma(b)_i)``.
    """
    bi = bisubstitution(decomp.rule)
    n_cls = len(decomp.ergodic_classes)
    probs: dict[str, tuple[Fraction, ...]] = {}
    for c, members in enumerate(decomp.ergodic_classes):
        unit = tuple(Fraction(int(c == e)) for e in range(n_cls))
        probs.update((p, unit) for p in members)
    t = list(decomp.transient)
    if not t:
        return probs
    pos = {p: i for i, p in enumerate(t)}
    step = Fraction(1, bi.length)
    a = exact.identity(len(t))
    rhs = [[Fraction(0)] * n_cls for _ in t]
    for p in t:
        for q in bi.image(p):
            if q in pos:
                a[pos[p]][pos[q]] -= step
            else:
                rhs[pos[p]][decomp.class_of(q)] += step
    columns = [exact.solve(a, [row[c] for row in rhs]) for c in range(n_cls)]
    for p in t:
        probs[p] = tuple(col[pos[p]] for col in columns)
    return probs


@dataclass(frozen=True)
class WeightMatrixV:
    params: tuple
    labels: tuple[str, ...]
    matrix: tuple[tuple, ...]

    def flat(self) -> tuple:
        return tuple(x for row in self.matrix for x in row)

    def __getitem__(self, pair: str):
        return self.flat()[self.labels.index(pair)]


def build_v(decomp: BisubstDecomposition, w: Sequence) -> WeightMatrixV:
    """Weight matrix with ``w[c]`` on class ``c`` and absorption averages elsewhere.

    ``w`` may hold Fractions or sympy expressions.
    """
    if len(w) != len(decomp.ergodic_classes):
        raise ValueError(f"expected {len(decomp.ergodic_classes)} parameters, got {len(w)}")
    probs = absorption_probabilities(decomp)
    labels = tuple(pair_labels(decomp.rule))
    flat = [sum((pc * wc for pc, wc in zip(probs[p], w) if pc), Fraction(0)) for p in labels]
    d = decomp.rule.size
    matrix = tuple(tuple(flat[a * d:(a + 1) * d]) for a in range(d))
    return WeightMatrixV(tuple(w), labels, matrix)


def v_eigenvalues(decomp: BisubstDecomposition, w: Sequence) -> dict:
    """Eigenvalues (with multiplicity) of ``v`` as a sympy dict."""
    return sympy.Matrix(build_v(decomp, w).matrix).eigenvals()


@dataclass(frozen=True)
class ExtremeRay:
    name: str
    params: tuple[Fraction, ...]
    vector: Vector


@dataclass(frozen=True)
class SemiPositivity:
    """Parameters ``(1, w_2)`` giving a positive semidefinite ``v``; ``None`` bounds for one class."""

    lower: Fraction | None
    upper: Fraction | None
    rays: tuple[ExtremeRay, ...]


def _ray(decomp: BisubstDecomposition, name: str, params) -> ExtremeRay:
    params = tuple(Fraction(p) for p in params)
    return ExtremeRay(name, params, tuple(build_v(decomp, params).flat()))


def _as_fraction(x) -> Fraction:
    x = sympy.nsimplify(x)
    if not x.is_Rational:
        raise ValueError(f"irrational extreme point {x}; not supported")
    return Fraction(int(x.p), int(x.q))


def semipositivity_interval(decomp: BisubstDecomposition) -> SemiPositivity:
    """Exact range of ``w_2`` (with ``w_1 = 1``) for which ``v`` is PSD.

    For a symmetric matrix, PSD is equivalent to the coefficients of
    ``det(lambda I - v)`` alternating in sign, so the region is cut out by
    polynomial inequalities in ``w_2`` that sympy solves exactly.
    """
    n_cls = len(decomp.ergodic_classes)
    if n_cls == 1:
        return SemiPositivity(None, None, (_ray(decomp, "v_1", (1,)),))
    if n_cls != 2:
        raise UnsupportedClassCount(f"unsupported class count: {n_cls}")
    t = sympy.Symbol("w_2", real=True)
    v = sympy.Matrix(build_v(decomp, (sympy.Integer(1), t)).matrix)
    if v != v.T:
        raise ValueError("weight matrix v is not symmetric")
    lam = sympy.Symbol("lambda")
    coeffs = sympy.Poly(v.charpoly(lam).as_expr(), lam).all_coeffs()
    d = v.shape[0]
    region = sympy.S.Reals
    for power, c in zip(range(d, -1, -1), coeffs):
        signed = sympy.expand((-1) ** (d - power) * c)
        region = region.intersect(
            sympy.solve_univariate_inequality(signed >= 0, t, relational=False))
    if not isinstance(region, sympy.Interval) or not (region.inf.is_finite and region.sup.is_finite):
        raise ValueError(f"semi-positivity region is not a bounded interval: {region}")
    lower, upper = _as_fraction(region.inf), _as_fraction(region.sup)
    rays = (_ray(decomp, "v_1", (1, upper)), _ray(decomp, "v_2", (1, lower)))
    return SemiPositivity(lower, upper, rays)


def ray_fourier_coeff(ray: ExtremeRay | Sequence, rule: SubstitutionRule, k: int) -> Fraction:
    vec = ray.vector if isinstance(ray, ExtremeRay) else ray
    return sum((Fraction(a) * b for a, b in zip(vec, correlation_table(rule)(k))), Fraction(0))


def weight_vector(rule: SubstitutionRule, weights: Mapping[str, int]) -> Vector:
    return tuple(Fraction(weights[a] * weights[b]) for a, b in itertools.product(rule.alphabet, repeat=2))


def autocorrelation(rule: SubstitutionRule, weights: Mapping[str, int], k: int) -> Fraction:
    return ray_fourier_coeff(weight_vector(rule, weights), rule, k)


# -- certificates for "all k" ------------------------------------------------

@dataclass(frozen=True)
class PeriodicityCertificate:
    """``S(k) = S(k mod period)`` for every ``k >= 1`` (residue 0 read as ``period``).

    Proof by induction on ``k = L*n + r``: the pair ``(S(k), S(k+1))`` is a
    fixed function of ``(S(n), S(n+1))``; ``checked`` lists the residues
    ``(n mod P, r)`` at which that map was verified to respect the period.
    """

    period: int
    representatives: tuple[Vector, ...]
    checked: int


def _periodic_at(table: PairCorrelations, period: int) -> bool:
    L = table.rule.length
    phi = [None] + [table(j) for j in range(1, period + 1)]

    def at(j: int) -> Vector:
        return phi[(j - 1) % period + 1]

    if any(table(j) != at(j) for j in range(1, L + 1)):
        return False
    for n in range(1, period + 1):
        here, nxt = at(n), at(n + 1)
        for r in range(L):
            if table.renormalise(r, here, nxt) != at(L * n + r):
                return False
    return True


def periodicity_certificate(rule: SubstitutionRule, max_period: int = 64) -> PeriodicityCertificate | None:
    table = correlation_table(rule)
    for period in range(1, max_period + 1):
        if _periodic_at(table, period):
            reps = tuple(table(j) for j in range(1, period + 1))
            return PeriodicityCertificate(period, reps, period * rule.length)
    return None


@dataclass(frozen=True)
class OrbitCertificate:
    """All values taken by ``S(k)``, ``k >= 1``, found as a finite closed set of states."""

    values: tuple[Vector, ...]
    states: int


def orbit_certificate(rule: SubstitutionRule, max_states: int = 512) -> OrbitCertificate | None:
    table = correlation_table(rule)
    L = rule.length
    start = (table(0), table(1))
    # k = r with 1 <= r < L comes from n = 0; every other k >= 1 from some n >= 1
    frontier = {(table.renormalise(r, *start), table.renormalise(r + 1, *start)) for r in range(1, L)}
    seen = set(frontier)
    while frontier:
        new = set()
        for here, nxt in frontier:
            for r in range(L):
                new.add((table.renormalise(r, here, nxt), table.renormalise(r + 1, here, nxt)))
        frontier = new - seen
        seen |= frontier
        if len(seen) > max_states:
            return None
    values = sorted({s[0] for s in seen})
    return OrbitCertificate(tuple(values), len(seen))


# -- classification ----------------------------------------------------------

class Verdict(str, enum.Enum):
    PURE_POINT = "PurePointDeltaComb"
    ABSOLUTELY_CONTINUOUS = "AbsolutelyContinuous"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class SeriesVerdict:
    name: str
    coeffs: list[Fraction]
    certified_values: list[Fraction] | None
    verdict: Verdict


def _judge(name: str, vec: Sequence, rule: SubstitutionRule, K: int,
           cert_values: Sequence[Vector] | None) -> SeriesVerdict:
    coeffs = [ray_fourier_coeff(vec, rule, k) for k in range(K + 1)]
    certified = None
    if cert_values is not None:
        certified = sorted({sum((Fraction(a) * b for a, b in zip(vec, s)), Fraction(0))
                            for s in cert_values})
    tail = coeffs[1:]
    if certified is not None and all(c == 0 for c in tail) and certified == [0]:
        verdict = Verdict.ABSOLUTELY_CONTINUOUS
    elif all(c == coeffs[0] for c in tail) and certified in (None, [coeffs[0]]):
        verdict = Verdict.PURE_POINT
    else:
        verdict = Verdict.INCONCLUSIVE
    return SeriesVerdict(name, coeffs, certified, verdict)


@dataclass
class SpectralReport:
    rule: SubstitutionRule
    horizon: int
    primitive_exponent: int
    pansiot_letter: str
    frequencies: tuple[Fraction, ...]
    sigma_hats: list[CorrVector]
    decomposition: BisubstDecomposition
    semipositivity: SemiPositivity
    rays: list[SeriesVerdict]
    balanced: SeriesVerdict
    weights: dict[str, int]
    periodicity: PeriodicityCertificate | None
    orbit: OrbitCertificate | None
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.balanced.verdict is Verdict.ABSOLUTELY_CONTINUOUS:
            return "purely AC (balanced weights)"
        if self.balanced.verdict is Verdict.PURE_POINT:
            return "pure point (balanced weights)"
        return "Inconclusive"

    @property
    def inconclusive(self) -> bool:
        return self.verdict == "Inconclusive"


def classify_spectrum(rule: SubstitutionRule, K: int = 64,
                      weights: Mapping[str, int] | None = None) -> SpectralReport:
    """Per-ray and balanced-weight verdicts, certified for all distances when possible."""
    primitive, exponent = is_primitive(rule)
    if not primitive:
        raise NotPrimitiveError(f"substitution is not primitive: {rule}")
    aperiodic, letter = is_aperiodic_pansiot(rule)
    if not aperiodic:
        raise ValueError(f"aperiodicity not established (Pansiot test inconclusive): {rule}")
    if weights is None:
        if len(rule.alphabet) != 4:
            raise ValueError("no default weights for this alphabet; pass weights explicitly")
        weights = dict(zip(rule.alphabet, (1, 1, -1, -1)))
    weights = dict(weights)

    decomp = ergodic_decomposition(rule)
    semi = semipositivity_interval(decomp)
    periodicity = periodicity_certificate(rule, max_period=max(K, 1))
    orbit = orbit_certificate(rule) if periodicity is None else None
    notes = []
    if periodicity is not None:
        cert_values = periodicity.representatives
        notes.append(f"S(k + {periodicity.period}) = S(k) certified for all k >= 1")
    elif orbit is not None:
        cert_values = orbit.values
        notes.append(f"no period <= {max(K, 1)}; S(k), k >= 1, takes {len(orbit.values)} values (closed orbit)")
    else:
        cert_values = None
        notes.append("no certificate for all k; verdicts rest on tested distances only")

    rays = [_judge(r.name, r.vector, rule, K, cert_values) for r in semi.rays]
    balanced = _judge("balanced", weight_vector(rule, weights), rule, K, cert_values)
    return SpectralReport(
        rule=rule,
        horizon=K,
        primitive_exponent=exponent,
        pansiot_letter=letter,
        frequencies=perron_data(rule).frequencies,
        sigma_hats=[sigma_hat(rule, k) for k in range(K + 1)],
        decomposition=decomp,
        semipositivity=semi,
        rays=rays,
        balanced=balanced,
        weights=weights,
        periodicity=periodicity,
        orbit=orbit,
        notes=notes,
    )
