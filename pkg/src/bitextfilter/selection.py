"""Threshold selection of the best-scoring subset that reaches a word budget.

The threshold is the largest score value ``t`` such that all pairs scoring
``>= t`` (and ``> 0``) hold at least ``budget`` target words. Every pair at or
above the threshold is selected, so ties can overshoot the budget.
"""

from __future__ import annotations

import math
import struct
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import zip_longest
from typing import Iterable, Sequence

from .corpus import ScoreRecord, parse_score, read_lines, tokenize
from .errors import DataError, UsageError

# top 16 bits of a positive IEEE double: sign, exponent and 4 mantissa bits
_BUCKET_SHIFT = 48


@dataclass
class SelectionResult:
    threshold: float
    selected_ids: set[int] = field(default_factory=set)
    achieved_words: int = 0
    budget: int = 0
    exhausted: bool = False


def _score_value(record) -> float:
    return record.total if isinstance(record, ScoreRecord) else float(record)


def _check_budget(budget: int) -> None:
    if budget < 1:
        raise UsageError(f"budget must be ≥1 word, got {budget}")


def _threshold_from_mass(mass: dict[float, int], budget: int) -> tuple[float, bool]:
    """Walk distinct positive score values from the top until the budget is met."""
    words = 0
    threshold = math.inf
    for value in sorted(mass, reverse=True):
        words += mass[value]
        threshold = value
        if words >= budget:
            return threshold, False
    return threshold, True


def select_by_budget(records: Iterable, counts: Sequence[int], budget: int) -> SelectionResult:
    """Exact in-memory selection. ``records`` are ScoreRecords or plain floats."""
    _check_budget(budget)
    scores = [_score_value(r) for r in records]
    if len(scores) != len(counts):
        raise DataError(f"{len(scores)} scores but {len(counts)} word counts")
    mass: dict[float, int] = defaultdict(int)
    for s, w in zip(scores, counts):
        if s > 0:
            mass[s] += w
    threshold, exhausted = _threshold_from_mass(mass, budget)
    selected = {i for i, s in enumerate(scores) if s > 0 and s >= threshold}
    achieved = sum(counts[i] for i in selected)
    return SelectionResult(threshold, selected, achieved, budget, exhausted)


def _bucket(value: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", value))[0] >> _BUCKET_SHIFT


def _scored_counts(score_path, trg_path):
    lines = zip_longest(read_lines(score_path), read_lines(trg_path))
    for lineno, (s, t) in enumerate(lines, start=1):
        if s is None or t is None:
            raise DataError(f"score file {score_path} and corpus {trg_path} differ in length", line=lineno)
        yield lineno - 1, parse_score(s, lineno, score_path), len(tokenize(t))


def select_streaming(score_path, trg_path, budget: int) -> SelectionResult:
    """Selection over files without sorting the corpus in memory.

    Pass one builds a word histogram over coarse buckets of the float bit
    pattern (order-preserving for positive doubles), pass two resolves the
    exact threshold inside the bucket where the budget is crossed, pass
    three collects the selected ids.
    """
    _check_budget(budget)
    hist: Counter = Counter()
    for _, s, w in _scored_counts(score_path, trg_path):
        if s > 0:
            hist[_bucket(s)] += w

    words = 0
    crossing = None
    for b in sorted(hist, reverse=True):
        words += hist[b]
        if words >= budget:
            crossing = b
            break

    if crossing is None:
        threshold, exhausted = (math.inf, True)
        if hist:
            # every positive score is selected; the threshold is the minimum
            threshold = min(s for _, s, _ in _scored_counts(score_path, trg_path) if s > 0)
    else:
        above = words - hist[crossing]
        mass: dict[float, int] = defaultdict(int)
        for _, s, w in _scored_counts(score_path, trg_path):
            if s > 0 and _bucket(s) == crossing:
                mass[s] += w
        threshold, exhausted = _threshold_from_mass(mass, budget - above)

    selected = set()
    achieved = 0
    for i, s, w in _scored_counts(score_path, trg_path):
        if s > 0 and s >= threshold:
            selected.add(i)
            achieved += w
    return SelectionResult(threshold, selected, achieved, budget, exhausted)


def emit_subset(selected_ids: Iterable[int], src_path, trg_path, out_src, out_trg) -> int:
    """Copy the selected lines, byte for byte and in corpus order. Returns the line count."""
    wanted = set(selected_ids)
    if any(i < 0 for i in wanted):
        raise DataError(f"negative line id {min(wanted)}")
    n_lines = 0
    written = 0
    with open(src_path, "rb") as fs, open(trg_path, "rb") as ft, \
            open(out_src, "wb") as os_, open(out_trg, "wb") as ot:
        for idx, (s, t) in enumerate(zip_longest(fs, ft)):
            if s is None or t is None:
                raise DataError(f"corpus halves {src_path} and {trg_path} differ in length", line=idx + 1)
            n_lines += 1
            if idx in wanted:
                os_.write(s)
                ot.write(t)
                written += 1
    if wanted and max(wanted) >= n_lines:
        raise DataError(f"selected id {max(wanted)} out of range for a {n_lines}-line corpus")
    return written
