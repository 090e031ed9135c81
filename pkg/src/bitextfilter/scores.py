"""Partial scores and their multiplicative combination.

All functions are pure. Inputs are word-normalized cross-entropies in nats
(or embedding vectors for ``sim``); outputs live in [0, 1].
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

# sim() failures are counted here unless the caller passes its own Counter
DIAGNOSTICS: Counter = Counter()


@dataclass(frozen=True)
class AdqConfig:
    use_abs_difference: bool = True
    use_ce_weighting: bool = True


@dataclass(frozen=True)
class DomConfig:
    cutoff: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.cutoff <= 1.0:
            raise ValueError(f"cutoff must be in [0, 1], got {self.cutoff}")


def _check_entropy(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    if value < 0:
        raise ValueError(f"{name} must be ≥0, got {value}")


def adq(h_fwd: float, h_bwd: float, cfg: AdqConfig = AdqConfig()) -> float:
    """Dual conditional cross-entropy turned into a score in (0, 1].

    ``h_fwd`` is H_A(y|x) and ``h_bwd`` is H_B(x|y). The penalty is the
    disagreement |h_fwd - h_bwd| plus the mean entropy; either term can be
    disabled through ``cfg``.
    """
    _check_entropy("h_fwd", h_fwd)
    _check_entropy("h_bwd", h_bwd)
    penalty = 0.0
    if cfg.use_abs_difference:
        penalty += abs(h_fwd - h_bwd)
    if cfg.use_ce_weighting:
        penalty += 0.5 * (h_fwd + h_bwd)
    return math.exp(-penalty)


def cut(value: float, c: float) -> float:
    return value if value >= c else 0.0


def dom(h_in: float, h_out: float, cfg: DomConfig = DomConfig()) -> float:
    """Cross-entropy difference score for the target sentence.

    dom' = exp(-(h_in - h_out)) = PP_out / PP_in, clipped from above at 1
    (the minimum, not the maximum, of dom' and 1) and zeroed below the cutoff.
    """
    _check_entropy("h_in", h_in)
    _check_entropy("h_out", h_out)
    ratio = math.exp(-(h_in - h_out))
    return cut(min(ratio, 1.0), cfg.cutoff)


def sim(vecs_x: Sequence[Sequence[float]], vecs_y: Sequence[Sequence[float]],
        diagnostics: Counter | None = None) -> float:
    """Cosine of the mean-pooled vectors, clamped to [0, 1].

    Degenerate inputs score 0 and are tallied in ``diagnostics``.
    """
    diag = DIAGNOSTICS if diagnostics is None else diagnostics
    if len(vecs_x) == 0 or len(vecs_y) == 0:
        diag["sim_empty"] += 1
        return 0.0
    try:
        ax = np.asarray(vecs_x, dtype=np.float64)
        ay = np.asarray(vecs_y, dtype=np.float64)
    except ValueError:
        diag["sim_dimension_mismatch"] += 1
        return 0.0
    if ax.ndim != 2 or ay.ndim != 2 or ax.shape[1] != ay.shape[1]:
        diag["sim_dimension_mismatch"] += 1
        return 0.0
    sx = ax.mean(axis=0)
    sy = ay.mean(axis=0)
    nx = np.linalg.norm(sx)
    ny = np.linalg.norm(sy)
    if nx == 0.0 or ny == 0.0:
        diag["sim_zero_norm"] += 1
        return 0.0
    cos = float(np.dot(sx, sy) / (nx * ny))
    return min(max(cos, 0.0), 1.0)


def clamp01(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def combine(partials: Mapping[str, float]) -> float:
    """Product of the partial scores, each clamped to [0, 1] first."""
    for name, value in partials.items():
        if not math.isfinite(value):
            raise ValueError(f"non-finite partial score from scorer {name!r}: {value}")
    total = 1.0
    # fixed multiplication order makes the result exactly permutation-invariant
    for value in sorted(clamp01(v) for v in partials.values()):
        total *= value
    return total
