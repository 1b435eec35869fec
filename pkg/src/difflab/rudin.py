"""Rudin-Shapiro type recursions driven by a periodic sign pattern.

With signs ``s_0, s_1, ...`` (used periodically) the polynomial pair evolves as

    P_{k+1} = P_k + s_k x^(2^k) Q_k,     Q_{k+1} = P_k - s_k x^(2^k) Q_k,

from ``P_0 = Q_0 = x``. Coefficient arrays are 0-based: position ``n`` holds
the coefficient of ``x^(n+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Sequence

import numpy as np

from difflab.subst import SubstitutionRule, fixed_point_prefix

LETTERS = ("A", "B", "C", "D")
# A, B code P, Q; C, D code -Q, -P.
STANDARD_WEIGHTS: Mapping[str, int] = {"A": 1, "B": 1, "C": -1, "D": -1}


@dataclass(frozen=True)
class SignSequence:
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("sign sequence must be nonempty")
        if any(s not in (1, -1) for s in self.period):
            raise ValueError(f"signs must be +1 or -1, got {self.period!r}")

    @classmethod
    def parse(cls, text: str) -> "SignSequence":
        """``"+-"`` -> ``(+1, -1)``."""
        if not text or set(text) - {"+", "-"}:
            raise ValueError(f"sign string must be a nonempty word over '+' and '-', got {text!r}")
        return cls(tuple(1 if c == "+" else -1 for c in text))

    def __len__(self):
        return len(self.period)

    def __getitem__(self, step: int) -> int:
        return self.period[step % len(self.period)]

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.period)


@dataclass(frozen=True)
class PolyPair:
    level: int
    p_coeffs: np.ndarray
    q_coeffs: np.ndarray

    @classmethod
    def base(cls) -> "PolyPair":
        one = np.ones(1, dtype=np.int8)
        return cls(0, one, one.copy())


def recursion_step(pair: PolyPair, sign: int) -> PolyPair:
    tail = sign * pair.q_coeffs
    return PolyPair(pair.level + 1,
                    np.concatenate([pair.p_coeffs, tail]),
                    np.concatenate([pair.p_coeffs, -tail]))


def poly_pair(signs: SignSequence, k: int) -> PolyPair:
    pair = PolyPair.base()
    for step in range(k):
        pair = recursion_step(pair, signs[step])
    return pair


def coefficients(signs: SignSequence, k: int) -> np.ndarray:
    """The ``2**k`` coefficients of ``P_k``."""
    if k < 0:
        raise ValueError("level must be nonnegative")
    return poly_pair(signs, k).p_coeffs


def sequence_prefix(signs: SignSequence, n: int) -> np.ndarray:
    """First ``n`` terms of the infinite +-1 sequence."""
    k = max(0, (n - 1).bit_length())
    return coefficients(signs, k)[:n]


def single_step_substitution(sign: int) -> SubstitutionRule:
    if sign == 1:
        images = ("AB", "AC", "DB", "DC")
    elif sign == -1:
        images = ("AC", "AB", "DC", "DB")
    else:
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return SubstitutionRule(LETTERS, images)


def derive_substitution(signs: SignSequence) -> SubstitutionRule:
    """Length ``2**p`` rule ``sigma_{s_0} o ... o sigma_{s_{p-1}}``."""
    steps = [single_step_substitution(s) for s in signs.period]
    return reduce(lambda outer, inner: outer.compose(inner), steps)


def binary_reduce(word: str, weights: Mapping[str, int] = STANDARD_WEIGHTS) -> np.ndarray:
    try:
        return np.array([weights[a] for a in word], dtype=np.int8)
    except KeyError as exc:
        raise ValueError(f"letter {exc.args[0]!r} has no weight") from None


def coefficient_sequence_from_rule(rule: SubstitutionRule, n: int,
                                   weights: Mapping[str, int] = STANDARD_WEIGHTS,
                                   seed: str = "A") -> np.ndarray:
    return binary_reduce(fixed_point_prefix(rule, seed, n), weights)


def parse_weights(text: str) -> dict[str, int]:
    """``"A=1,B=1,C=-1,D=-1"`` -> mapping."""
    out = {}
    for item in text.split(","):
        letter, _, value = item.partition("=")
        w = int(value)
        if w not in (1, -1):
            raise ValueError(f"weight for {letter.strip()!r} must be +1 or -1")
        out[letter.strip()] = w
    return out


def signs_from(values: Sequence[int] | str) -> SignSequence:
    if isinstance(values, str):
        return SignSequence.parse(values)
    return SignSequence(tuple(values))
