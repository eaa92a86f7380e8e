import itertools
import random

import pytest

from odeccsim.codec import construct_random
from odeccsim.error_model import (
    CHARGED,
    CHECKERED,
    RANDOM,
    DataPattern,
    uniform_profile,
)
from odeccsim.gf2 import BitVector, solve_column_combination
from odeccsim.oracle import coverage, ground_truth
from odeccsim.profilers import (
    BEEP,
    BEEP_CRAFT_SUBSET_BOUND,
    HARP_A,
    HARP_A_BEEP,
    HARP_U,
    NAIVE,
    PROFILER_KINDS,
    _craft_beep_pattern,
    new_state,
    reactive_round,
    run_round,
)

CHARGED_PATTERN = DataPattern(CHARGED)


def make(kind, k=4, pattern=CHARGED_PATTERN, direct_risk=None, beep_seed=0):
    return new_state(kind, pattern, k, beep_seed=beep_seed, direct_risk=direct_risk)


def test_harp_u_sees_certain_raw_errors(reference_74):
    profile = uniform_profile(4, 3, (1, 2), 1.0)
    state = run_round(make(HARP_U), reference_74, profile, random.Random(0))
    assert state.identified == {1, 2}
    assert state.first_direct_round == 0


def test_harp_a_precomputes_miscorrection_target(reference_74):
    profile = uniform_profile(4, 3, (1, 2), 1.0)
    state = run_round(make(HARP_A), reference_74, profile, random.Random(0))
    assert state.identified == {1, 2, 3}


def test_naive_observes_miscorrection_alongside_directs(reference_74):
    profile = uniform_profile(4, 3, (1, 2), 1.0)
    state = run_round(make(NAIVE), reference_74, profile, random.Random(0))
    assert state.identified == {1, 2, 3}
    assert state.first_direct_round == 0


def test_true_cell_gating_blocks_identification(reference_74):
    # checkered round 0 stores 1,0,1,0: at-risk bits 1 and 3 hold '0' and
    # cannot fail even at probability 1.0; the inverted round exposes them
    profile = uniform_profile(4, 3, (1, 3), 1.0)
    state = make(NAIVE, pattern=DataPattern(CHECKERED))
    stream = random.Random(0)
    run_round(state, reference_74, profile, stream)
    assert state.identified == set()
    run_round(state, reference_74, profile, stream)
    assert {1, 3} <= state.identified


def test_no_errors_round_is_valid(reference_74):
    profile = uniform_profile(4, 3, (), 0.5)
    state = make(NAIVE)
    for _ in range(4):
        run_round(state, reference_74, profile, random.Random(1))
    assert state.identified == set()
    assert state.first_direct_round is None
    assert state.round == 4


def test_identified_is_monotone_and_round_advances(reference_74):
    profile = uniform_profile(4, 3, (0, 2), 0.5)
    state = make(NAIVE)
    rng = random.Random(3)
    sizes = []
    for r in range(32):
        run_round(state, reference_74, profile, rng)
        sizes.append(len(state.identified))
    assert state.round == 32
    assert sizes == sorted(sizes)


@pytest.mark.parametrize("kind", PROFILER_KINDS)
def test_identified_subset_of_all_risk(kind):
    rng = random.Random(77)
    for trial in range(12):
        code = construct_random(64, rng.getrandbits(32))
        n = rng.randint(2, 5)
        positions = tuple(rng.sample(range(71), n))
        profile = uniform_profile(64, 7, positions, 0.5)
        truth = ground_truth(code, profile)
        pattern = DataPattern(RANDOM, seed=rng.getrandbits(32))
        state = new_state(
            kind,
            pattern,
            64,
            beep_seed=rng.getrandbits(32),
            direct_risk=truth.direct_risk if kind == HARP_A_BEEP else None,
        )
        stream = random.Random(rng.getrandbits(32))
        for _ in range(48):
            run_round(state, code, profile, stream)
            assert state.identified <= set(truth.all_risk)
            if kind == HARP_U:
                assert state.identified <= set(truth.direct_risk)


def test_harp_u_full_direct_coverage_in_one_round_at_certainty():
    rng = random.Random(5)
    for _ in range(10):
        code = construct_random(64, rng.getrandbits(32))
        positions = tuple(rng.sample(range(64), 4))
        profile = uniform_profile(64, 7, positions, 1.0)
        truth = ground_truth(code, profile)
        state = new_state(HARP_U, CHARGED_PATTERN, 64)
        run_round(state, code, profile, random.Random(0))
        assert coverage(state.identified, truth.direct_risk) == 1.0


def test_coverage_non_decreasing_all_profilers(reference_74):
    profile = uniform_profile(4, 3, (0, 1, 3), 0.5)
    truth = ground_truth(reference_74, profile)
    for kind in PROFILER_KINDS:
        state = new_state(
            kind,
            DataPattern(RANDOM, seed=2),
            4,
            beep_seed=9,
            direct_risk=truth.direct_risk if kind == HARP_A_BEEP else None,
        )
        stream = random.Random(6)
        last = 0.0
        for _ in range(40):
            run_round(state, reference_74, profile, stream)
            now = coverage(state.identified, truth.all_risk)
            assert now >= last
            last = now


def test_first_direct_round_censoring(reference_74):
    # probability so low nothing fires in a short budget
    profile = uniform_profile(4, 3, (0,), 0.01)
    state = make(NAIVE)
    stream = random.Random(2)
    for _ in range(8):
        run_round(state, reference_74, profile, stream)
    assert state.first_direct_round is None


def test_beep_crafts_pattern_matching_solver(reference_74):
    state = make(BEEP)
    state.identified = {1, 2}
    state.beep_hypotheses = {1, 2}
    crafted = _craft_beep_pattern(state, reference_74)
    # H[1] ^ H[2] = H[3]: target bit 3 is exposed by charging bits 1 and 2
    assert crafted == 0b0110
    columns = [BitVector(3, reference_74.column_values[p]) for p in (1, 2)]
    target = BitVector(3, reference_74.column_values[3])
    assert solve_column_combination(columns, target, BEEP_CRAFT_SUBSET_BOUND) == {0, 1}


def test_beep_craft_agrees_with_solver_on_random_codes():
    rng = random.Random(13)
    for _ in range(20):
        code = construct_random(64, rng.getrandbits(32))
        hyp = sorted(rng.sample(range(64), rng.randint(1, 6)))
        identified = set(hyp)
        state = make(BEEP, k=64)
        state.identified = set(identified)
        state.beep_hypotheses = set(hyp)
        crafted = _craft_beep_pattern(state, code)
        columns = [BitVector(code.p, code.column_values[p]) for p in hyp]
        expected = None
        for target in range(64):
            if target in identified:
                continue
            combo = solve_column_combination(
                columns, BitVector(code.p, code.column_values[target]), BEEP_CRAFT_SUBSET_BOUND
            )
            if combo:
                expected = 0
                for i in combo:
                    expected |= 1 << hyp[i]
                break
        assert crafted == expected


def test_beep_crafted_round_exposes_target(reference_74):
    profile = uniform_profile(4, 3, (1, 2), 1.0)
    state = make(BEEP)
    state.identified = {1, 2}
    state.beep_hypotheses = {1, 2}
    run_round(state, reference_74, profile, random.Random(0))
    assert 3 in state.identified


def test_beep_probe_pattern_matches_random_cell_pattern(reference_74):
    pattern = DataPattern(RANDOM, seed=31)
    state = make(BEEP, pattern=pattern)
    assert state.probe_pattern == pattern
    charged_state = make(BEEP, pattern=CHARGED_PATTERN, beep_seed=4)
    assert charged_state.probe_pattern.kind == RANDOM


def test_hybrid_switches_to_beep_after_direct_coverage(reference_74):
    # data bit 0 plus parity bit 4: the pair miscorrects onto data bit 3,
    # which pure bypass profiling can never see
    profile = uniform_profile(4, 3, (0, 4), 1.0)
    truth = ground_truth(reference_74, profile)
    assert truth.direct_risk == frozenset({0})
    assert truth.indirect_risk == frozenset({3})
    state = new_state(HARP_A_BEEP, CHARGED_PATTERN, 4, beep_seed=11, direct_risk=truth.direct_risk)
    stream = random.Random(14)
    run_round(state, reference_74, profile, stream)
    assert state.beep_phase
    assert state.beep_hypotheses == {0}
    for _ in range(63):
        run_round(state, reference_74, profile, stream)
    assert state.identified == {0, 3}
    # plain harp-a never reaches the indirect bit
    harp_a = make(HARP_A)
    stream = random.Random(14)
    for _ in range(64):
        run_round(harp_a, reference_74, profile, stream)
    assert harp_a.identified == {0}


def test_hybrid_with_empty_direct_target_starts_in_beep_phase(reference_74):
    state = new_state(HARP_A_BEEP, CHARGED_PATTERN, 4, direct_risk=frozenset())
    assert state.beep_phase


def test_hybrid_requires_direct_risk():
    with pytest.raises(ValueError):
        new_state(HARP_A_BEEP, CHARGED_PATTERN, 4)


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        new_state("oracle", CHARGED_PATTERN, 4)


def test_reactive_safe_after_full_direct_coverage():
    rng = random.Random(55)
    for _ in range(10):
        code = construct_random(64, rng.getrandbits(32))
        positions = tuple(rng.sample(range(64), 3))
        profile = uniform_profile(64, 7, positions, 0.5)
        truth = ground_truth(code, profile)
        state = new_state(HARP_U, CHARGED_PATTERN, 64)
        state.identified = set(truth.direct_risk)
        stream = random.Random(rng.getrandbits(32))
        for _ in range(64):
            state, safe = reactive_round(state, code, profile, 1, stream)
            assert safe
        assert state.identified <= set(truth.all_risk)


def test_reactive_full_identification_is_idle():
    code = construct_random(64, 77)
    profile = uniform_profile(64, 7, (0, 1, 2), 1.0)
    truth = ground_truth(code, profile)
    state = new_state(NAIVE, CHARGED_PATTERN, 64)
    state.identified = set(truth.all_risk)
    before = set(state.identified)
    for _ in range(16):
        state, safe = reactive_round(state, code, profile, 1, random.Random(1))
        assert safe
    assert state.identified == before


def test_reactive_unsafe_when_capability_exceeded():
    # find two data bits whose pair syndrome matches no column: the decoder
    # leaves both flipped, two unidentified errors escape a capability of 1
    code = construct_random(64, 3)
    pair = None
    for a, b in itertools.combinations(range(64), 2):
        if code.position_for_syndrome(code.column_values[a] ^ code.column_values[b]) is None:
            pair = (a, b)
            break
    assert pair is not None
    profile = uniform_profile(64, 7, pair, 1.0)
    state = new_state(NAIVE, CHARGED_PATTERN, 64)
    state, safe = reactive_round(state, code, profile, 1, random.Random(0))
    assert not safe
    assert state.identified == set()
