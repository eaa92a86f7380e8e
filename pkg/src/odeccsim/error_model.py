"""At-risk-bit profiles, round-indexed data patterns, and error injection.

Every cell is modelled as a true-cell: it can only fail while storing '1',
so injected errors depend on the data written into the word.  Failures are
independent Bernoulli draws per bit and per round.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .gf2 import BitVector
from .seeding import derive

TRUE_CELL = "true-cell"

RANDOM = "random"
CHARGED = "charged"
CHECKERED = "checkered"
PATTERN_KINDS = (RANDOM, CHARGED, CHECKERED)


@dataclass(frozen=True, slots=True)
class AtRiskBit:
    position: int
    probability: float
    polarity: str = TRUE_CELL

    def __post_init__(self):
        if not 0.0 < self.probability <= 1.0:
            raise ValueError(f"probability must be in (0, 1], got {self.probability}")
        if self.polarity != TRUE_CELL:
            raise ValueError("only true-cell polarity is modelled")


@dataclass(frozen=True)
class WordErrorProfile:
    """The at-risk positions of one ECC word, sorted by position."""

    code_k: int
    code_p: int
    at_risk: tuple[AtRiskBit, ...]

    def __post_init__(self):
        n = self.code_k + self.code_p
        ordered = tuple(sorted(self.at_risk, key=lambda b: b.position))
        positions = [b.position for b in ordered]
        if any(not 0 <= pos < n for pos in positions):
            raise ValueError(f"at-risk positions must lie in [0, {n})")
        if len(set(positions)) != len(positions):
            raise ValueError("at-risk positions must be distinct")
        object.__setattr__(self, "at_risk", ordered)

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(b.position for b in self.at_risk)


def uniform_profile(
    code_k: int, code_p: int, positions, probability: float
) -> WordErrorProfile:
    """Profile with one shared Bernoulli probability across all at-risk bits."""
    return WordErrorProfile(
        code_k, code_p, tuple(AtRiskBit(pos, probability) for pos in positions)
    )


def draw_profile(
    code_k: int,
    code_p: int,
    n: int,
    probability: float,
    seed: int,
    data_only: bool = False,
) -> WordErrorProfile:
    """Seeded uniform sample of n distinct at-risk positions.

    data_only restricts the sample to data positions [0, k); the default
    draws from every codeword position, parity bits included.
    """
    population = range(code_k if data_only else code_k + code_p)
    rng = random.Random(seed)
    return uniform_profile(code_k, code_p, rng.sample(population, n), probability)


@dataclass(frozen=True, slots=True)
class DataPattern:
    kind: str
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.kind == RANDOM and self.seed is None:
            raise ValueError("random pattern requires a seed")


def _checker_mask(k: int) -> int:
    mask = 0
    for i in range(0, k, 2):
        mask |= 1 << i
    return mask


def pattern_value(pattern: DataPattern, round_index: int, k: int) -> int:
    """Packed dataword for a profiling round.

    charged writes all ones every round; checkered and random alternate a base
    word (even rounds) with its bitwise inverse (odd rounds); random draws a
    fresh base word for every even/odd round pair.
    """
    if round_index < 0:
        raise ValueError("round_index must be >= 0")
    full = (1 << k) - 1
    if pattern.kind == CHARGED:
        return full
    if pattern.kind == CHECKERED:
        base = _checker_mask(k)
    else:
        base = random.Random(derive(pattern.seed, round_index // 2)).getrandbits(k)
    return base if round_index % 2 == 0 else base ^ full


def pattern_for_round(pattern: DataPattern, round_index: int, k: int) -> BitVector:
    return BitVector(k, pattern_value(pattern, round_index, k))


def inject_value(profile: WordErrorProfile, codeword_value: int, rng: random.Random) -> int:
    """Packed pre-correction error vector R for one stored codeword.

    Exactly one variate is drawn per at-risk bit regardless of cell activity,
    so paired simulations that share a stream stay aligned even when they
    write different data.
    """
    r = 0
    for bit in profile.at_risk:
        if rng.random() < bit.probability and (codeword_value >> bit.position) & 1:
            r |= 1 << bit.position
    return r


def inject(profile: WordErrorProfile, codeword: BitVector, rng: random.Random) -> BitVector:
    if codeword.length != profile.code_k + profile.code_p:
        raise ValueError(
            f"codeword length {codeword.length} does not match profile "
            f"({profile.code_k}+{profile.code_p})"
        )
    return BitVector(codeword.length, inject_value(profile, codeword.value, rng))
