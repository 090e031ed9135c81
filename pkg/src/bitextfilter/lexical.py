"""IBM Model 1 lexical translation tables trained by EM, and the conditional
cross-entropy H(y|x) they induce.

Model 1 ignores target-side history, so P(y_t | y_<t, x) reduces to the
alignment-averaged lexical probability of y_t given the source sentence
(with a NULL source token prepended).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import artifacts
from .corpus import SentencePair, TokenSeq, read_lines
from .errors import DataError, UsageError

FORMAT_VERSION = 1
NULL = "<null>"
FLOOR = 1e-9
DEFAULT_ITERATIONS = 5


@dataclass
class LexicalModel:
    """t(trg | src) table. ``table[src][trg]`` holds the nonzero entries."""

    table: dict[str, dict[str, float]]
    lowercase: bool = True
    log_likelihoods: list[float] = field(default_factory=list, compare=False)

    @property
    def src_vocab(self) -> set[str]:
        return set(self.table) - {NULL}

    @property
    def trg_vocab(self) -> set[str]:
        return {w for row in self.table.values() for w in row}

    def prob(self, trg: str, src: str) -> float:
        return self.table.get(src, {}).get(trg, 0.0)

    def prepare(self, tokens: TokenSeq) -> TokenSeq:
        return [t.lower() for t in tokens] if self.lowercase else list(tokens)

    def save(self, path) -> None:
        payload = {
            "lowercase": self.lowercase,
            "null": NULL,
            "table": {s: dict(sorted(row.items())) for s, row in sorted(self.table.items())},
        }
        artifacts.save(path, "ibm1", FORMAT_VERSION, payload)

    @classmethod
    def load(cls, path) -> "LexicalModel":
        doc = artifacts.load(path, "ibm1", FORMAT_VERSION)
        return cls(doc["table"], doc["lowercase"])

    def dump(self):
        """Yield ``src<TAB>trg<TAB>prob`` lines."""
        for s, row in sorted(self.table.items()):
            for w, p in sorted(row.items()):
                yield f"{s}\t{w}\t{p!r}"


def _sentence_loglik(table, src_null, trg) -> float:
    scale = 1.0 / len(src_null)
    total = 0.0
    for f in trg:
        total += math.log(scale * sum(table[e].get(f, 0.0) for e in src_null))
    return total


def corpus_log_likelihood(model: LexicalModel, corpus: Iterable[tuple[TokenSeq, TokenSeq]]) -> float:
    """Sum over pairs of ln P(y | x) under Model 1 (no floor, no length term)."""
    table = defaultdict(dict, model.table)
    return math.fsum(
        _sentence_loglik(table, [NULL] + model.prepare(x), model.prepare(y)) for x, y in corpus
    )


def train_ibm1_tokens(corpus: list[tuple[TokenSeq, TokenSeq]], iterations: int = DEFAULT_ITERATIONS,
                      lowercase: bool = True,
                      on_iteration: Callable[[int, LexicalModel], None] | None = None) -> LexicalModel:
    """EM from a uniform table over the given (source, target) token lists."""
    if iterations < 1:
        raise UsageError(f"iterations must be ≥1, got {iterations}")
    data = []
    for x, y in corpus:
        if lowercase:
            x, y = [t.lower() for t in x], [t.lower() for t in y]
        if x and y:
            data.append(([NULL] + x, y))
    if not data:
        raise DataError("empty bitext: no pair with both sides non-empty")

    trg_vocab = sorted({f for _, y in data for f in y})
    uniform = 1.0 / len(trg_vocab)
    table: dict[str, dict[str, float]] = defaultdict(dict)
    for x, y in data:
        for e in x:
            row = table[e]
            for f in y:
                row[f] = uniform

    history = []
    for it in range(1, iterations + 1):
        counts: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        totals: dict[str, float] = defaultdict(float)
        loglik = 0.0
        for x, y in data:
            rows = [table[e] for e in x]
            for f in y:
                z = sum(row[f] for row in rows)
                loglik += math.log(z / len(x))
                for e, row in zip(x, rows):
                    c = row[f] / z
                    counts[e][f] += c
                    totals[e] += c
        history.append(loglik)
        table = defaultdict(dict)
        for e in sorted(counts):
            denom = totals[e]
            table[e] = {f: c / denom for f, c in sorted(counts[e].items())}
        if on_iteration is not None:
            on_iteration(it, LexicalModel(dict(table), lowercase))

    model = LexicalModel(dict(table), lowercase)
    history.append(corpus_log_likelihood(LexicalModel(dict(table), False), [(x[1:], y) for x, y in data]))
    model.log_likelihoods = history
    return model


def train_ibm1(bitext: Iterable[SentencePair], iterations: int = DEFAULT_ITERATIONS,
               lowercase: bool = True, reverse: bool = False) -> LexicalModel:
    """Train t(trg|src); with ``reverse`` the table is t(src|trg)."""
    corpus = [(p.trg, p.src) if reverse else (p.src, p.trg) for p in bitext]
    return train_ibm1_tokens(corpus, iterations, lowercase)


def cond_cross_entropy(model: LexicalModel, x: TokenSeq, y: TokenSeq) -> float:
    """Word-normalized -ln P(y | x) in nats, each token floored at FLOOR."""
    if not x or not y:
        raise DataError("conditional cross-entropy undefined for empty sentence")
    table = model.table
    rows = [table.get(NULL, {})] + [table.get(e, {}) for e in model.prepare(x)]
    scale = 1.0 / len(rows)
    total = 0.0
    for f in model.prepare(y):
        p = scale * sum(row.get(f, 0.0) for row in rows)
        total += math.log(max(p, FLOOR))
    return -total / len(y)


def load_entropy_column(path, corpus_len: int) -> list[float]:
    """Per-line external cross-entropies (nats/token), line-aligned with a corpus."""
    values = []
    for lineno, line in enumerate(read_lines(path), start=1):
        try:
            v = float(line.strip())
        except ValueError:
            raise DataError(f"unparseable entropy {line.strip()!r} in {path}", line=lineno) from None
        if not math.isfinite(v) or v < 0:
            raise DataError(f"entropy must be finite and ≥0, got {line.strip()!r} in {path}", line=lineno)
        values.append(v)
    if len(values) != corpus_len:
        raise DataError(f"entropy column {path} has {len(values)} lines, corpus has {corpus_len}")
    return values
