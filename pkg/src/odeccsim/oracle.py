"""Exact ground truth for one (code, profile) pair.

Enumerates every post-correction error outcome that is realizable across all
2**k datawords and all subsets of the at-risk bits, without ever enumerating
datawords: the reachable stored values of the at-risk positions form a linear
subspace (the encoding map is linear), so they are computed as a column span.

Risk sets contain data positions only; a miscorrection that lands on a parity
bit corrupts no data and is therefore not a risk.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .codec import HammingCode
from .error_model import WordErrorProfile
from .gf2 import BitVector, column_span

# Outcome enumeration touches up to 2**n activity vectors x 2**n subsets.
MAX_AT_RISK = 16


@dataclass(frozen=True)
class RiskGroundTruth:
    direct_risk: frozenset[int]
    indirect_risk: frozenset[int]
    max_simultaneous: int

    @property
    def all_risk(self) -> frozenset[int]:
        return self.direct_risk | self.indirect_risk


def _check_size(profile: WordErrorProfile) -> None:
    n = len(profile.at_risk)
    if n > MAX_AT_RISK:
        raise ValueError(f"too many at-risk bits for exact enumeration: {n} > {MAX_AT_RISK}")


def achievable_activity_sets(code: HammingCode, profile: WordErrorProfile) -> set[BitVector]:
    """Restrictions of all encodable codewords to the at-risk positions.

    Index i of an activity vector corresponds to the i-th at-risk position in
    ascending order; a bit is active (can fail) iff its stored value is '1'.
    """
    _check_size(profile)
    positions = profile.positions
    n = len(positions)
    columns = []
    for i in range(code.k):
        value = 0
        for idx, pos in enumerate(positions):
            if pos < code.k:
                bit = 1 if pos == i else 0
            else:
                bit = (code.column_values[i] >> (pos - code.k)) & 1
            if bit:
                value |= 1 << idx
        columns.append(BitVector(n, value))
    return column_span(columns)


@lru_cache(maxsize=65536)
def _enumerate_outcomes(
    code: HammingCode, profile: WordErrorProfile
) -> tuple[frozenset[int], frozenset[int], int, tuple[int, ...]]:
    """(direct_risk, indirect_risk, max_simultaneous, distinct outcome masks).

    Each outcome mask packs the post-correction data-error positions of one
    realizable pre-correction error subset.
    """
    positions = profile.positions
    k = code.k
    realizable: set[int] = set()
    for activity in achievable_activity_sets(code, profile):
        active = activity.value
        sub = active
        while True:
            if sub:
                realizable.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & active
    direct: set[int] = set()
    indirect: set[int] = set()
    masks: set[int] = set()
    max_simultaneous = 0
    for sub in realizable:
        syndrome = 0
        sub_positions = []
        rest = sub
        while rest:
            idx = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            pos = positions[idx]
            sub_positions.append(pos)
            syndrome ^= code.column_values[pos]
        match = code.position_for_syndrome(syndrome)
        err_mask = 0
        for pos in sub_positions:
            if pos < k and pos != match:
                direct.add(pos)
                err_mask |= 1 << pos
        if match is not None and match < k and match not in sub_positions:
            indirect.add(match)
            err_mask |= 1 << match
        if err_mask:
            masks.add(err_mask)
            count = err_mask.bit_count()
            if count > max_simultaneous:
                max_simultaneous = count
    return frozenset(direct), frozenset(indirect), max_simultaneous, tuple(sorted(masks))


def ground_truth(code: HammingCode, profile: WordErrorProfile) -> RiskGroundTruth:
    _check_size(profile)
    direct, indirect, max_simultaneous, _ = _enumerate_outcomes(code, profile)
    return RiskGroundTruth(direct, indirect, max_simultaneous)


def outcome_masks(code: HammingCode, profile: WordErrorProfile) -> tuple[int, ...]:
    """Distinct packed post-correction error outcomes, for incremental metrics."""
    _check_size(profile)
    return _enumerate_outcomes(code, profile)[3]


def max_unidentified_simultaneous(
    code: HammingCode, profile: WordErrorProfile, identified: Iterable[int]
) -> int:
    """Worst simultaneous post-correction error count outside `identified`.

    This is the correction capability a secondary code needs to safely pick up
    the remaining at-risk bits during reactive profiling.
    """
    _check_size(profile)
    ident_mask = 0
    for pos in identified:
        ident_mask |= 1 << pos
    masks = _enumerate_outcomes(code, profile)[3]
    worst = 0
    for mask in masks:
        count = (mask & ~ident_mask).bit_count()
        if count > worst:
            worst = count
    return worst


def coverage(identified: Iterable[int], truth_set: Iterable[int]) -> float:
    """Fraction of truly at-risk bits that were identified; 1.0 when none exist."""
    truth = frozenset(truth_set)
    if not truth:
        return 1.0
    return len(frozenset(identified) & truth) / len(truth)
