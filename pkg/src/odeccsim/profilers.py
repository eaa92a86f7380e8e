"""The profiling algorithms, each exposing a uniform per-round interface.

naive       writes a pattern, reads through the decoder, and marks every
            post-correction error it observes.
harp-u      writes the same patterns but reads through the correction bypass,
            so it observes raw data-bit errors directly.
harp-a      harp-u plus precomputation: knowing H, it marks every data
            position whose column equals the XOR of identified columns,
            i.e. the miscorrection targets those bits can provoke.
beep        exploits H to craft datawords that force known-at-risk bits to
            reproduce a syndrome matching an unidentified column, exposing it
            as a miscorrection; uses random patterns until the first
            post-correction error is confirmed.
harp-a+beep runs harp-a until every bit at risk of a raw data error is
            identified, then switches to beep rounds for the rest.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .codec import HammingCode
from .error_model import RANDOM, DataPattern, WordErrorProfile, inject_value, pattern_value
from .seeding import derive

NAIVE = "naive"
BEEP = "beep"
HARP_U = "harp-u"
HARP_A = "harp-a"
HARP_A_BEEP = "harp-a+beep"
PROFILER_KINDS = (NAIVE, BEEP, HARP_U, HARP_A, HARP_A_BEEP)

# Largest identified-column subset examined by harp-a's precompute; matches
# the largest evaluated injected-error count.
HARP_A_SUBSET_BOUND = 5
# Largest known-at-risk combination beep tries to reproduce in one pattern.
BEEP_CRAFT_SUBSET_BOUND = 3


def _bits(mask: int):
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


@dataclass
class ProfilerState:
    """Mutable per-word profiling state; identified only ever grows."""

    kind: str
    pattern: DataPattern
    k: int
    identified: set[int] = field(default_factory=set)
    beep_hypotheses: set[int] = field(default_factory=set)
    round: int = 0
    first_direct_round: Optional[int] = None
    # beep machinery
    probe_pattern: Optional[DataPattern] = None
    rotate_rng: Optional[random.Random] = None
    # harp-a / hybrid machinery
    observed_raw: set[int] = field(default_factory=set)
    direct_target: Optional[frozenset] = None
    beep_phase: bool = False
    _closed: set[int] = field(default_factory=set, repr=False)
    _craft_key: Optional[tuple] = field(default=None, repr=False)
    _craft_value: Optional[int] = field(default=None, repr=False)


def new_state(
    kind: str,
    pattern: DataPattern,
    k: int,
    beep_seed: int = 0,
    direct_risk: Optional[frozenset] = None,
) -> ProfilerState:
    if kind not in PROFILER_KINDS:
        raise ValueError(f"unknown profiler kind {kind!r}")
    state = ProfilerState(kind=kind, pattern=pattern, k=k)
    if kind in (BEEP, HARP_A_BEEP):
        # Reuse the cell's random stream when it has one, so beep's probing
        # rounds are pattern-identical to the other profilers' rounds.
        if pattern.kind == RANDOM:
            state.probe_pattern = pattern
        else:
            state.probe_pattern = DataPattern(RANDOM, seed=derive(beep_seed, "probe"))
        state.rotate_rng = random.Random(derive(beep_seed, "rotate"))
    if kind == HARP_A_BEEP:
        if direct_risk is None:
            raise ValueError("harp-a+beep needs the oracle's direct-risk set")
        state.direct_target = frozenset(direct_risk)
        state.beep_phase = not state.direct_target
    return state


def _craft_beep_pattern(state: ProfilerState, code: HammingCode) -> Optional[int]:
    """Dataword exposing the lowest-indexed unidentified data position, if any.

    Searches, per target column, for the smallest (then lexicographically
    first) subset of at most BEEP_CRAFT_SUBSET_BOUND hypothesis columns whose
    XOR equals it -- the same order solve_column_combination uses -- and
    programs exactly that subset with '1's.  Cached until the hypothesis or
    identified sets grow.
    """
    key = (len(state.beep_hypotheses), len(state.identified))
    if state._craft_key == key:
        return state._craft_value
    hyp = sorted(pos for pos in state.beep_hypotheses if pos < code.k)
    combo_by_syndrome: dict[int, int] = {}
    for size in range(1, min(BEEP_CRAFT_SUBSET_BOUND, len(hyp)) + 1):
        for combo in itertools.combinations(hyp, size):
            acc = 0
            mask = 0
            for pos in combo:
                acc ^= code.column_values[pos]
                mask |= 1 << pos
            combo_by_syndrome.setdefault(acc, mask)
    crafted = None
    for target in range(code.k):
        if target in state.identified:
            continue
        mask = combo_by_syndrome.get(code.column_values[target])
        if mask is not None:
            crafted = mask
            break
    state._craft_key = key
    state._craft_value = crafted
    return crafted


def _round_pattern(state: ProfilerState, code: HammingCode) -> int:
    beep_mode = state.kind == BEEP or (state.kind == HARP_A_BEEP and state.beep_phase)
    if not beep_mode:
        return pattern_value(state.pattern, state.round, state.k)
    if not state.identified:
        return pattern_value(state.probe_pattern, state.round, state.k)
    crafted = _craft_beep_pattern(state, code)
    if crafted is not None:
        return crafted
    return state.rotate_rng.getrandbits(state.k)


def _precompute_closure(state: ProfilerState, code: HammingCode) -> None:
    """harp-a precompute: XOR subsets of identified columns against H.

    Incremental: each identified position is combined once with all
    previously processed ones, which covers every subset of size 2 to
    HARP_A_SUBSET_BOUND by induction on its last-processed member.
    """
    pending = [pos for pos in state.identified if pos not in state._closed]
    while pending:
        member = pending.pop()
        others = sorted(state._closed)
        member_col = code.column_values[member]
        for size in range(1, HARP_A_SUBSET_BOUND):
            for combo in itertools.combinations(others, size):
                acc = member_col
                for pos in combo:
                    acc ^= code.column_values[pos]
                match = code.position_for_syndrome(acc)
                if (
                    match is not None
                    and match < code.k
                    and match not in state.identified
                ):
                    state.identified.add(match)
                    pending.append(match)
        state._closed.add(member)


def run_round(
    state: ProfilerState,
    code: HammingCode,
    profile: WordErrorProfile,
    rng: random.Random,
) -> ProfilerState:
    """Execute one profiling round: write, inject, read, record."""
    d = _round_pattern(state, code)
    c = code.encode_value(d)
    r_mask = inject_value(profile, c, rng)
    c_prime = c ^ r_mask
    raw_mask = code.bypass_value(c_prime) ^ d  # raw data-bit flips

    bypass_read = state.kind in (HARP_U, HARP_A) or (
        state.kind == HARP_A_BEEP and not state.beep_phase
    )
    if bypass_read:
        observed = raw_mask
    else:
        decoded, _action, _pos = code.decode_value(c_prime)
        observed = decoded ^ d

    if state.first_direct_round is None and observed & raw_mask:
        state.first_direct_round = state.round

    new_positions = [pos for pos in _bits(observed) if pos not in state.identified]
    state.identified.update(new_positions)

    if bypass_read:
        state.observed_raw.update(new_positions)
        if state.kind in (HARP_A, HARP_A_BEEP):
            _precompute_closure(state, code)
        if state.kind == HARP_A_BEEP and state.direct_target <= state.identified:
            state.beep_phase = True
            state.beep_hypotheses = set(state.observed_raw)
    else:
        state.beep_hypotheses.update(_bits(observed))

    state.round += 1
    return state


def reactive_round(
    state: ProfilerState,
    code: HammingCode,
    profile: WordErrorProfile,
    secondary_capability: int,
    rng: random.Random,
) -> tuple[ProfilerState, bool]:
    """One in-service read under a secondary code of the given capability.

    Charged data maximizes cell activity, the conservative choice for checking
    reactive safety.  Unidentified error counts within the capability are
    identified and reported safe; anything larger escaped the secondary code,
    so nothing is learned and the round is unsafe.
    """
    full = (1 << code.k) - 1
    c = code.encode_value(full)
    r_mask = inject_value(profile, c, rng)
    decoded, _action, _pos = code.decode_value(c ^ r_mask)
    observed = decoded ^ full
    new_positions = [pos for pos in _bits(observed) if pos not in state.identified]
    if len(new_positions) > secondary_capability:
        return state, False
    state.identified.update(new_positions)
    return state, True
