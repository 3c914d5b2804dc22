"""Combine real and synthetic QA datasets at a controlled ratio.

The ratio is synthetic-to-real: a ratio of 0.3 over 100 real pairs adds
round-half-up(0.3 * 100) = 30 synthetic pairs. Every random choice is
driven by one 64-bit linear congruential generator (Knuth's constants,
see Lcg below) so a (inputs, seed) pair always produces identical bytes.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, replace

from .dataset_io import DATASET_VERSION, QADataset, QARecord, SELECTION_POLICIES

ANSWER_LENGTH_BUCKETS = ("1-5", "6-10", "11-20", "21-40", "41+")

WH_ORDER = ("WHO", "WHAT", "WHEN", "WHERE", "WHY", "HOW")


class MixError(ValueError):
    """Synthetic pool too small for the requested ratio."""


@dataclass(frozen=True)
class MixConfig:
    ratio: float
    seed: int = 42
    allow_short: bool = False
    selection: str = "TOP_SCORE"

    def __post_init__(self) -> None:
        if self.ratio < 0:
            raise ValueError(f"ratio must be >= 0, got {self.ratio}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in unsigned 64 bits")
        if self.selection not in SELECTION_POLICIES:
            raise ValueError(f"unknown selection policy {self.selection!r}")


@dataclass(frozen=True)
class DatasetStats:
    total: int
    synthetic_count: int
    real_count: int
    per_wh_type: dict[str, int]
    per_template: dict[str, int]
    answer_length_histogram: dict[str, int]
    realized_ratio: float | None


class Lcg:
    """64-bit linear congruential generator (Knuth MMIX constants).

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2^64
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MODULUS = 2**64

    def __init__(self, seed: int):
        self.state = seed % self.MODULUS

    def next(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) % self.MODULUS
        return self.state

    def below(self, bound: int) -> int:
        """Draw an index in [0, bound)."""
        return self.next() % bound


def round_half_up(value: float) -> int:
    return math.floor(value + 0.5)


def shuffle(items: list, rng: Lcg) -> None:
    """In-place Fisher-Yates shuffle driven by the generator."""
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]


def _select_synthetic(pool: list[QARecord], n: int, config: MixConfig, rng: Lcg) -> list[QARecord]:
    if config.selection == "TOP_SCORE":
        ranked = sorted(pool, key=lambda r: (-(r.score if r.score is not None else 0.0), r.id))
        return ranked[:n]
    # SEEDED_UNIFORM: shuffle the id-sorted pool, take the head.
    ordered = sorted(pool, key=lambda r: r.id)
    shuffle(ordered, rng)
    return ordered[:n]


def mix(real: QADataset, synthetic: QADataset, config: MixConfig) -> QADataset:
    """All real pairs plus a ratio-controlled synthetic selection, shuffled.

    Raises MixError naming both counts when the pool cannot cover the
    requested amount and allow_short is off; with allow_short the whole
    pool is taken and the realized ratio simply falls short.
    """
    n_real = len(real.records)
    pool = list(synthetic.records)
    n_syn = round_half_up(config.ratio * n_real)
    if n_syn > len(pool):
        if not config.allow_short:
            raise MixError(f"synthetic pool too small: need {n_syn}, have {len(pool)}")
        n_syn = len(pool)

    rng = Lcg(config.seed)
    chosen = _select_synthetic(pool, n_syn, config, rng)

    combined = [replace(record, origin="real") for record in real.records]
    combined += [replace(record, origin="synthetic") for record in chosen]
    shuffle(combined, rng)
    return QADataset(version=DATASET_VERSION, records=tuple(combined))


def compute_stats(dataset: QADataset) -> DatasetStats:
    """Exact counts over a dataset; template and wh maps cover synthetic pairs only."""
    synthetic = [r for r in dataset.records if r.origin == "synthetic"]
    real_count = len(dataset.records) - len(synthetic)

    per_wh = {wh: 0 for wh in WH_ORDER}
    for record in synthetic:
        if record.wh_type in per_wh:
            per_wh[record.wh_type] += 1

    per_template = Counter(
        record.template_id for record in synthetic if record.template_id is not None
    )

    histogram = {bucket: 0 for bucket in ANSWER_LENGTH_BUCKETS}
    for record in dataset.records:
        length = len(record.first_answer().text)
        if length <= 5:
            histogram["1-5"] += 1
        elif length <= 10:
            histogram["6-10"] += 1
        elif length <= 20:
            histogram["11-20"] += 1
        elif length <= 40:
            histogram["21-40"] += 1
        else:
            histogram["41+"] += 1

    realized = len(synthetic) / real_count if real_count > 0 else None
    return DatasetStats(
        total=len(dataset.records),
        synthetic_count=len(synthetic),
        real_count=real_count,
        per_wh_type=per_wh,
        per_template=dict(sorted(per_template.items())),
        answer_length_histogram=histogram,
        realized_ratio=realized,
    )
