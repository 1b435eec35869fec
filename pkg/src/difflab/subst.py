"""Constant-length substitutions and their combinatorial data."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from difflab import exact

IntMatrix = list[list[int]]


class NotPrimitiveError(ValueError):
    pass


@dataclass(frozen=True)
class SubstitutionRule:
    """A constant-length substitution.

    ``alphabet`` fixes the order used for every matrix and vector index;
    ``images[i]`` is the image of ``alphabet[i]``.
    """

    alphabet: tuple[str, ...]
    images: tuple[str, ...]

    def __post_init__(self):
        if len(self.alphabet) < 1 or len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError(f"alphabet letters must be distinct: {self.alphabet!r}")
        if any(len(a) != 1 for a in self.alphabet):
            raise ValueError("letters must be single characters")
        if len(self.images) != len(self.alphabet):
            raise ValueError("need exactly one image per letter")
        lengths = {len(w) for w in self.images}
        if len(lengths) != 1 or 0 in lengths:
            raise ValueError(f"images must be nonempty and of equal length, got {self.images!r}")
        letters = set(self.alphabet)
        for w in self.images:
            bad = set(w) - letters
            if bad:
                raise ValueError(f"image {w!r} uses letters outside the alphabet: {sorted(bad)}")

    @classmethod
    def from_mapping(cls, rules: Mapping[str, str], alphabet=None) -> "SubstitutionRule":
        alphabet = tuple(alphabet if alphabet is not None else rules)
        missing = [a for a in alphabet if a not in rules]
        if missing:
            raise ValueError(f"no image given for {missing}")
        extra = [a for a in rules if a not in alphabet]
        if extra:
            raise ValueError(f"image given for letters outside the alphabet: {extra}")
        return cls(alphabet, tuple(rules[a] for a in alphabet))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def length(self) -> int:
        return len(self.images[0])

    def index(self, letter: str) -> int:
        return self.alphabet.index(letter)

    def image(self, letter: str) -> str:
        return self.images[self.index(letter)]

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.alphabet, self.images))

    def __call__(self, word: str) -> str:
        table = self.as_dict()
        return "".join(table[a] for a in word)

    def compose(self, inner: "SubstitutionRule") -> "SubstitutionRule":
        """``self o inner``: apply ``inner`` first, then ``self``."""
        if inner.alphabet != self.alphabet:
            raise ValueError("cannot compose substitutions on different alphabets")
        return SubstitutionRule(self.alphabet, tuple(self(w) for w in inner.images))

    def __str__(self):
        return ", ".join(f"{a}->{w}" for a, w in zip(self.alphabet, self.images))


# -- text format ------------------------------------------------------------
#
#   # comment
#   alphabet: ABCD
#   A -> ABDB
#   B -> ABAC
#   ...
#
# A JSON object {"alphabet": "ABCD", "rules": {"A": "ABDB", ...}} is also read.

def parse_rule(text: str) -> SubstitutionRule:
    stripped = text.strip()
    if stripped.startswith("{"):
        doc = json.loads(stripped)
        return SubstitutionRule.from_mapping(doc["rules"], doc.get("alphabet"))
    alphabet = None
    rules: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet"):
            key, _, value = line.partition(":")
            if key.strip() != "alphabet":
                raise ValueError(f"line {lineno}: cannot parse {raw!r}")
            alphabet = value.strip()
            continue
        letter, sep, word = line.partition("->")
        letter, word = letter.strip(), word.strip()
        if not sep or len(letter) != 1 or not word:
            raise ValueError(f"line {lineno}: expected 'X -> WORD', got {raw!r}")
        if letter in rules:
            raise ValueError(f"line {lineno}: duplicate rule for {letter!r}")
        rules[letter] = word
    if not rules:
        raise ValueError("no rules found")
    return SubstitutionRule.from_mapping(rules, alphabet)


def format_rule(rule: SubstitutionRule) -> str:
    lines = [f"alphabet: {''.join(rule.alphabet)}"]
    lines += [f"{a} -> {w}" for a, w in zip(rule.alphabet, rule.images)]
    return "\n".join(lines) + "\n"


# -- matrices ---------------------------------------------------------------

def instruction_matrices(rule: SubstitutionRule) -> list[IntMatrix]:
    """``R_i[a][b] = 1`` iff letter ``a`` sits at position ``i`` of the image of ``b``."""
    d = rule.size
    mats = []
    for i in range(rule.length):
        r = [[0] * d for _ in range(d)]
        for b, word in enumerate(rule.images):
            r[rule.index(word[i])][b] = 1
        mats.append(r)
    return mats


def substitution_matrix(rule: SubstitutionRule) -> IntMatrix:
    return [[word.count(a) for word in rule.images] for a in rule.alphabet]


def is_primitive(rule: SubstitutionRule) -> tuple[bool, int | None]:
    """Least ``n <= d(d-1)`` with ``M**n > 0``; ``(False, None)`` if there is none."""
    m = substitution_matrix(rule)
    d = rule.size
    power = m
    for n in range(1, max(1, d * (d - 1)) + 1):
        if all(x > 0 for row in power for x in row):
            return True, n
        power = exact.matmul(power, m)
    return False, None


def _require_primitive(rule: SubstitutionRule) -> None:
    if not is_primitive(rule)[0]:
        raise NotPrimitiveError(f"substitution is not primitive: {rule}")


def fixed_point_prefix(rule: SubstitutionRule, seed: str, n: int) -> str:
    """First ``n`` letters of the one-sided fixed point grown from ``seed``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not rule.image(seed).startswith(seed):
        raise ValueError(f"non-prolongable seed {seed!r}")
    word = seed
    while len(word) < n:
        if rule.length == 1:
            raise ValueError(f"non-prolongable seed {seed!r}: length-1 rule never grows")
        word = rule(word[: -(-n // rule.length)])
    return word[:n]


def legal_factors(rule: SubstitutionRule, ell: int, seed: str | None = None) -> set[str]:
    """Length-``ell`` factors of the fixed point, by prefix scan plus closure.

    Only primitive rules are accepted: for those the language does not depend
    on the seed, which defaults to the first letter of the alphabet.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    _require_primitive(rule)
    seed = rule.alphabet[0] if seed is None else seed
    word = fixed_point_prefix(rule, seed, max(64, ell * rule.length ** 3))
    found = {word[i:i + ell] for i in range(len(word) - ell + 1)}
    frontier = set(found)
    while frontier:
        new = set()
        for w in frontier:
            image = rule(w)
            new.update(image[i:i + ell] for i in range(len(image) - ell + 1))
        frontier = new - found
        found |= frontier
    return found


def is_aperiodic_pansiot(rule: SubstitutionRule) -> tuple[bool, str | None]:
    """Sufficient aperiodicity test: a letter with two distinct left neighbours.

    ``(False, None)`` means the test is inconclusive, not that the rule is periodic.
    """
    pairs = legal_factors(rule, 2)
    for a in rule.alphabet:
        if len({p[0] for p in pairs if p[1] == a}) >= 2:
            return True, a
    return False, None


@dataclass(frozen=True)
class PerronData:
    eigenvalue: int
    frequencies: tuple[Fraction, ...]


def perron_data(rule: SubstitutionRule) -> PerronData:
    """PF eigenvalue (= the length) and the normalised letter frequencies."""
    _require_primitive(rule)
    m = substitution_matrix(rule)
    L = rule.length
    shifted = [[m[i][j] - (L if i == j else 0) for j in range(rule.size)]
               for i in range(rule.size)]
    kernel = exact.nullspace(shifted)
    if len(kernel) != 1:
        raise ValueError("non-simple PF eigenvalue")
    v = kernel[0]
    total = sum(v)
    return PerronData(L, tuple(x / total for x in v))
