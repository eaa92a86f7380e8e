"""Monte-Carlo driver and metric computation.

Three analyses:

* evaluations     -- per-round profiler coverage, bootstrapping, worst-case
                     unidentified error counts and BER, all measured against
                     the exact oracle, emitted as one row per round.
* probabilities   -- per-bit pre- and post-correction error frequencies under
                     the charged pattern.
* wasted-capacity -- closed-form expected repair waste per granularity.

Every profiler in a run sees the same ECC words, the same at-risk bits, the
same injection streams, and (where the algorithm allows) the same data
patterns, so comparisons are paired.  Rows are emitted pre-sorted on their
identity fields, and all randomness derives from the per-code seed, so a run
over C codes equals the concatenation of C single-code runs with incremented
seeds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, fields
from statistics import median, quantiles
from typing import IO, Iterable, Iterator, Optional

from . import __version__
from .codec import SUPPORTED_K, construct_random
from .error_model import (
    CHARGED,
    PATTERN_KINDS,
    RANDOM,
    DataPattern,
    draw_profile,
    inject_value,
)
from .oracle import coverage, ground_truth, outcome_masks
from .profilers import HARP_A_BEEP, PROFILER_KINDS, new_state, run_round
from .seeding import derive, float_bits

ANALYSES = ("probabilities", "evaluations", "wasted-capacity")
RISK_POSITION_MODES = ("all", "data")

# The secondary code is single-error correcting, matching on-die ECC.
SECONDARY_CORRECTION_CAPABILITY = 1

PRE_CORRECTION = "pre-correction"
POST_CORRECTION = "post-correction"

# Repair granularities from single-bit repair up to a system page.
WASTED_GRANULARITIES = (1, 8, 32, 64, 256, 512, 1024, 32768)


@dataclass(frozen=True)
class ExperimentConfig:
    analysis: str = "evaluations"
    k: int = 64
    num_codes: int = 10
    num_words_per_code: int = 100
    base_seed: int = 0
    rounds: int = 128  # trials per word in probabilities mode
    probabilities: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
    error_counts: tuple[int, ...] = (2, 3, 4, 5)
    patterns: tuple[str, ...] = (RANDOM,)
    profilers: tuple[str, ...] = PROFILER_KINDS
    risk_positions: str = "all"

    def validate(self) -> None:
        if self.analysis not in ANALYSES:
            raise ValueError(f"analysis must be one of {ANALYSES}")
        if self.k not in SUPPORTED_K:
            raise ValueError(f"k must be one of {SUPPORTED_K}, got {self.k}")
        if min(self.num_codes, self.num_words_per_code, self.rounds) < 1:
            raise ValueError("counts must be positive")
        if not self.probabilities or any(not 0.0 < q <= 1.0 for q in self.probabilities):
            raise ValueError("probabilities must lie in (0, 1]")
        if not self.error_counts or any(n < 1 for n in self.error_counts):
            raise ValueError("error counts must be positive")
        if not self.patterns or any(p not in PATTERN_KINDS for p in self.patterns):
            raise ValueError(f"patterns must be drawn from {PATTERN_KINDS}")
        if not self.profilers or any(p not in PROFILER_KINDS for p in self.profilers):
            raise ValueError(f"profilers must be drawn from {PROFILER_KINDS}")
        if self.risk_positions not in RISK_POSITION_MODES:
            raise ValueError(f"risk_positions must be one of {RISK_POSITION_MODES}")


@dataclass(frozen=True, slots=True)
class RoundMetrics:
    """One CSV row; code_index is the code's construction seed so that
    partitioned invocations emit identical rows."""

    code_index: int
    word_index: int
    profiler: str
    pattern: str
    probability: float
    error_count: int
    round: int
    direct_coverage: float
    indirect_coverage: float
    all_coverage: float
    first_direct_round: Optional[int]
    unidentified_max_simultaneous: int
    ber_before_secondary: float
    ber_after_secondary: float


@dataclass(frozen=True, slots=True)
class ProbabilityRecord:
    code_index: int
    word_index: int
    error_count: int
    position: int
    bit_class: str
    frequency: float


@dataclass(frozen=True, slots=True)
class WastedCapacityRecord:
    granularity: int
    raw_ber: float
    wasted_fraction: float


def wasted_capacity(granularity: int, raw_ber: float) -> float:
    """Expected fraction of capacity lost to non-erroneous bits inside
    repaired granularity-bit blocks, at independent per-bit error rate p.

    A bit is wasted iff it is error-free but shares a block with an error:
    (1-p) - (1-p)**g.  This form is exactly 0.0 at g=1 and at p in {0, 1}.
    """
    if granularity < 1:
        raise ValueError("granularity must be >= 1")
    if not 0.0 <= raw_ber <= 1.0:
        raise ValueError("raw_ber must lie in [0, 1]")
    survive = 1.0 - raw_ber
    return survive - survive**granularity


def amplification_row(n: int) -> tuple[int, int, int]:
    """(unique patterns, uncorrectable patterns, worst-case post-correction
    at-risk bits) caused by n bits at risk of pre-correction errors."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (2**n - 1, 2**n - n - 1, 2**n - 1)


def _profile_for(config: ExperimentConfig, code, code_seed: int, word: int, n: int, q: float):
    return draw_profile(
        code.k,
        code.p,
        n,
        q,
        derive(code_seed, word, n, "profile"),
        data_only=config.risk_positions == "data",
    )


def _evaluate_code(config: ExperimentConfig, code_seed: int) -> Iterator[RoundMetrics]:
    code = construct_random(config.k, code_seed)
    k = code.k
    for word in range(config.num_words_per_code):
        pattern_seed = derive(code_seed, word, "pattern")
        beep_seed = derive(code_seed, word, "beep")
        for n in config.error_counts:
            for q in config.probabilities:
                profile = _profile_for(config, code, code_seed, word, n, q)
                truth = ground_truth(code, profile)
                masks = outcome_masks(code, profile)
                direct, indirect, all_risk = truth.direct_risk, truth.indirect_risk, truth.all_risk
                for pattern_kind in config.patterns:
                    pattern = DataPattern(
                        pattern_kind, seed=pattern_seed if pattern_kind == RANDOM else None
                    )
                    for profiler in config.profilers:
                        state = new_state(
                            profiler,
                            pattern,
                            k,
                            beep_seed=beep_seed,
                            direct_risk=direct if profiler == HARP_A_BEEP else None,
                        )
                        rng = random.Random(
                            derive(code_seed, word, n, float_bits(q), pattern_kind, "inject")
                        )
                        seen = -1
                        cached = (0.0, 0.0, 0.0, 0, 0.0, 0.0)
                        for r in range(config.rounds):
                            run_round(state, code, profile, rng)
                            if len(state.identified) != seen:
                                seen = len(state.identified)
                                ident_mask = 0
                                for pos in state.identified:
                                    ident_mask |= 1 << pos
                                unid_max = 0
                                for mask in masks:
                                    count = (mask & ~ident_mask).bit_count()
                                    if count > unid_max:
                                        unid_max = count
                                ber_before = len(all_risk - state.identified) / k
                                ber_after = (
                                    0.0
                                    if unid_max <= SECONDARY_CORRECTION_CAPABILITY
                                    else ber_before
                                )
                                cached = (
                                    coverage(state.identified, direct),
                                    coverage(state.identified, indirect),
                                    coverage(state.identified, all_risk),
                                    unid_max,
                                    ber_before,
                                    ber_after,
                                )
                            yield RoundMetrics(
                                code_seed,
                                word,
                                profiler,
                                pattern_kind,
                                q,
                                n,
                                r,
                                cached[0],
                                cached[1],
                                cached[2],
                                state.first_direct_round,
                                cached[3],
                                cached[4],
                                cached[5],
                            )


def run_evaluations(config: ExperimentConfig) -> Iterator[RoundMetrics]:
    config.validate()
    if config.analysis != "evaluations":
        raise ValueError("config.analysis must be 'evaluations'")
    for code_pos in range(config.num_codes):
        yield from _evaluate_code(config, config.base_seed + code_pos)


def _probabilities_for_code(config: ExperimentConfig, code_seed: int) -> Iterator[ProbabilityRecord]:
    code = construct_random(config.k, code_seed)
    k = code.k
    full = (1 << k) - 1
    codeword = code.encode_value(full)
    trials = config.rounds
    for word in range(config.num_words_per_code):
        for n in config.error_counts:
            for q in config.probabilities:
                # At-risk bits come from the data positions so that every one
                # of them is active under the charged pattern and fails at
                # exactly the configured rate, mirroring the by-design
                # pre-correction probabilities this analysis reports.
                profile = draw_profile(
                    code.k, code.p, n, q, derive(code_seed, word, n, "profile"), data_only=True
                )
                truth = ground_truth(code, profile)
                pre_counts = dict.fromkeys(profile.positions, 0)
                post_counts = dict.fromkeys(sorted(truth.all_risk), 0)
                rng = random.Random(
                    derive(code_seed, word, n, float_bits(q), "trials")
                )
                for _ in range(trials):
                    r_mask = inject_value(profile, codeword, rng)
                    rest = r_mask
                    while rest:
                        pos = (rest & -rest).bit_length() - 1
                        rest &= rest - 1
                        pre_counts[pos] += 1
                    decoded, _action, _pos = code.decode_value(codeword ^ r_mask)
                    observed = decoded ^ full
                    while observed:
                        pos = (observed & -observed).bit_length() - 1
                        observed &= observed - 1
                        post_counts[pos] += 1
                for pos, count in pre_counts.items():
                    yield ProbabilityRecord(
                        code_seed, word, n, pos, PRE_CORRECTION, count / trials
                    )
                for pos, count in post_counts.items():
                    yield ProbabilityRecord(
                        code_seed, word, n, pos, POST_CORRECTION, count / trials
                    )


def run_probabilities(config: ExperimentConfig) -> Iterator[ProbabilityRecord]:
    config.validate()
    if config.analysis != "probabilities":
        raise ValueError("config.analysis must be 'probabilities'")
    for code_pos in range(config.num_codes):
        yield from _probabilities_for_code(config, config.base_seed + code_pos)


def run_wasted_capacity(
    granularities: tuple[int, ...] = WASTED_GRANULARITIES,
    ber_decades: tuple[int, int] = (-7, 0),
    points_per_decade: int = 20,
) -> Iterator[WastedCapacityRecord]:
    """Closed-form sweep over a log-spaced raw-BER axis."""
    lo, hi = ber_decades
    steps = (hi - lo) * points_per_decade
    for granularity in granularities:
        for i in range(steps + 1):
            ber = 10.0 ** (lo + i / points_per_decade)
            yield WastedCapacityRecord(granularity, ber, wasted_capacity(granularity, ber))


@dataclass
class CellSummary:
    """Aggregates for one (profiler, probability, error_count) cell."""

    words: int
    round_budget: int
    rounds_to_full_direct: int
    full_direct_censored: bool
    rounds_to_max_at_most: dict[int, int]
    max_at_most_censored: dict[int, bool]
    first_direct_median: float
    first_direct_quartiles: tuple[float, float]
    ber_before_by_round: list[float]
    ber_after_by_round: list[float]


def _order_statistic(values: list[int], percentile: float) -> int:
    # Conservative (ceiling) order statistic: the smallest value v such that
    # at least `percentile` of the sample is <= v.
    ranked = sorted(values)
    index = max(1, math.ceil(percentile * len(ranked)))
    return ranked[index - 1]


def summarize(
    metrics: Iterable[RoundMetrics], percentile: float
) -> dict[tuple[str, float, int], CellSummary]:
    """Order-independent aggregation of an evaluations stream."""
    if not 0.0 < percentile <= 1.0:
        raise ValueError("percentile must lie in (0, 1]")
    full_direct: dict[tuple, dict[tuple, Optional[int]]] = {}
    max_at_most: dict[tuple, dict[tuple, dict[int, int]]] = {}
    first_direct: dict[tuple, dict[tuple, Optional[int]]] = {}
    ber_sums: dict[tuple, dict[int, list[float]]] = {}
    budgets: dict[tuple, int] = {}
    max_unid: dict[tuple, int] = {}

    for row in metrics:
        cell = (row.profiler, row.probability, row.error_count)
        word = (row.code_index, row.word_index, row.pattern)
        budgets[cell] = max(budgets.get(cell, 0), row.round + 1)
        max_unid[cell] = max(max_unid.get(cell, 0), row.unidentified_max_simultaneous)
        cell_full = full_direct.setdefault(cell, {})
        reached = cell_full.get(word)
        if row.direct_coverage >= 1.0 and (reached is None or row.round < reached):
            cell_full[word] = row.round
        else:
            cell_full.setdefault(word, None)
        cell_max = max_at_most.setdefault(cell, {}).setdefault(word, {})
        x = row.unidentified_max_simultaneous
        if x not in cell_max or row.round < cell_max[x]:
            cell_max[x] = row.round
        cell_first = first_direct.setdefault(cell, {})
        if row.first_direct_round is not None:
            cell_first[word] = row.first_direct_round
        else:
            cell_first.setdefault(word, None)
        sums = ber_sums.setdefault(cell, {}).setdefault(row.round, [0.0, 0.0, 0])
        sums[0] += row.ber_before_secondary
        sums[1] += row.ber_after_secondary
        sums[2] += 1

    result: dict[tuple[str, float, int], CellSummary] = {}
    for cell, per_word in full_direct.items():
        budget = budgets[cell]
        full_values = [budget if r is None else r for r in per_word.values()]
        full_censored = any(r is None for r in per_word.values())
        bound_values: dict[int, int] = {}
        bound_censored: dict[int, bool] = {}
        for x in range(1, max(max_unid[cell], 1) + 1):
            values = []
            censored = False
            for word_bounds in max_at_most[cell].values():
                reached = [r for bound, r in word_bounds.items() if bound <= x]
                if reached:
                    values.append(min(reached))
                else:
                    values.append(budget)
                    censored = True
            bound_values[x] = _order_statistic(values, percentile)
            bound_censored[x] = censored
        first_values = [budget if r is None else r for r in first_direct[cell].values()]
        if len(first_values) >= 2:
            q1, _q2, q3 = quantiles(first_values, n=4, method="inclusive")
        else:
            q1 = q3 = float(first_values[0])
        rounds = sorted(ber_sums[cell])
        ber_before = [ber_sums[cell][r][0] / ber_sums[cell][r][2] for r in rounds]
        ber_after = [ber_sums[cell][r][1] / ber_sums[cell][r][2] for r in rounds]
        result[cell] = CellSummary(
            words=len(per_word),
            round_budget=budget,
            rounds_to_full_direct=_order_statistic(full_values, percentile),
            full_direct_censored=full_censored,
            rounds_to_max_at_most=bound_values,
            max_at_most_censored=bound_censored,
            first_direct_median=float(median(first_values)),
            first_direct_quartiles=(float(q1), float(q3)),
            ber_before_by_round=ber_before,
            ber_after_by_round=ber_after,
        )
    return result


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def config_comment_lines(config: ExperimentConfig) -> list[str]:
    pairs = []
    for f in fields(config):
        value = getattr(config, f.name)
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        pairs.append(f"{f.name}={value}")
    return [f"# odeccsim {__version__}", "# " + " ".join(pairs)]


def write_csv(records: Iterable, record_type, stream: IO[str], config: Optional[ExperimentConfig] = None) -> int:
    """Write records as UTF-8 CSV: '#' config comments, header, one row each.

    Returns the number of data rows written.
    """
    names = [f.name for f in fields(record_type)]
    if config is not None:
        for line in config_comment_lines(config):
            stream.write(line + "\n")
    stream.write(",".join(names) + "\n")
    count = 0
    for record in records:
        stream.write(",".join(_format_value(getattr(record, name)) for name in names) + "\n")
        count += 1
    return count
