"""Word n-gram language model with Witten-Bell interpolation.

Cross-entropies are in nats per token and normalized by the sentence's own
token count. For order >= 2 each sentence is padded with order-1 ``<s>``
symbols and closed by ``</s>``; the end symbol is scored but does not count
towards the length. Unigram models have no context and use no boundary
symbols at all.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from . import artifacts
from .corpus import TokenSeq, read_lines, tokenize
from .errors import DataError, UsageError

FORMAT_VERSION = 1
BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"
SMOOTHING_MODES = ("witten-bell", "none")
MAX_ORDER = 5


@dataclass
class NGramModel:
    order: int
    smoothing: str
    # counts[n-1][history][word] for histories of length n-1
    counts: list[dict[tuple, dict[str, int]]]
    vocab: frozenset[str]
    _stats: list[dict[tuple, tuple[int, int]]] = field(init=False, repr=False)

    def __post_init__(self):
        self._stats = [
            {h: (sum(nxt.values()), len(nxt)) for h, nxt in level.items()} for level in self.counts
        ]

    @property
    def events(self) -> list[str]:
        """Every word the model can predict."""
        return sorted(self.vocab)

    def _map(self, token: str) -> str:
        if token in self.vocab or self.smoothing == "none":
            return token
        return UNK

    def _padded(self, tokens: TokenSeq) -> list[str]:
        mapped = [self._map(t) for t in tokens]
        if self.order == 1:
            return mapped
        return [BOS] * (self.order - 1) + mapped + [EOS]

    def prob(self, word: str, history: tuple = ()) -> float:
        """P(word | history); history is truncated to the last order-1 tokens."""
        history = tuple(history)[len(history) - self.order + 1 :] if self.order > 1 else ()
        history = tuple(t if t == BOS else self._map(t) for t in history)
        word = self._map(word)
        if self.smoothing == "none":
            return self._ml_prob(word, history)
        return self._wb_prob(word, history)

    def _ml_prob(self, word, history):
        nxt = self.counts[len(history)].get(history)
        if nxt is None:
            return 0.0
        total, _ = self._stats[len(history)][history]
        return nxt.get(word, 0) / total

    def _wb_prob(self, word, history):
        p = 1.0 / len(self.vocab)
        for n in range(len(history) + 1):
            h = history[len(history) - n :]
            nxt = self.counts[n].get(h)
            if nxt is None:
                continue
            total, types = self._stats[n][h]
            p = (nxt.get(word, 0) + types * p) / (total + types)
        return p

    def logprob_terms(self, tokens: TokenSeq) -> list[float]:
        """Natural-log probability of every scored position, end symbol included."""
        seq = self._padded(tokens)
        k = self.order - 1
        prob = self._ml_prob if self.smoothing == "none" else self._wb_prob
        terms = []
        for i in range(k if self.order > 1 else 0, len(seq)):
            word = seq[i]
            history = tuple(seq[max(0, i - k) : i])
            p = prob(word, history)
            if p <= 0.0:
                raise DataError(f"zero-probability event: token {word!r} after {' '.join(history) or '<start>'!r}")
            terms.append(math.log(p))
        return terms

    def save(self, path) -> None:
        payload = {
            "order": self.order,
            "smoothing": self.smoothing,
            "vocab": sorted(self.vocab),
            "counts": [
                [[" ".join(h), dict(sorted(nxt.items()))] for h, nxt in sorted(level.items())]
                for level in self.counts
            ],
        }
        artifacts.save(path, "ngram", FORMAT_VERSION, payload)

    @classmethod
    def load(cls, path) -> "NGramModel":
        doc = artifacts.load(path, "ngram", FORMAT_VERSION)
        counts = [{tuple(h.split()): nxt for h, nxt in level} for level in doc["counts"]]
        return cls(doc["order"], doc["smoothing"], counts, frozenset(doc["vocab"]))

    def dump(self):
        """Yield ``ngram<TAB>count`` lines, lowest order first."""
        for level in self.counts:
            for h, nxt in sorted(level.items()):
                for w, c in sorted(nxt.items()):
                    yield f"{' '.join(h + (w,))}\t{c}"


def train_lm_from_lines(lines, order: int = 3, smoothing: str = "witten-bell") -> NGramModel:
    if not 1 <= order <= MAX_ORDER:
        raise UsageError(f"order must be in 1..{MAX_ORDER}, got {order}")
    if smoothing not in SMOOTHING_MODES:
        raise UsageError(f"unknown smoothing {smoothing!r}; expected one of {SMOOTHING_MODES}")
    sentences = [tokenize(line) for line in lines]
    sentences = [s for s in sentences if s]
    if not sentences:
        raise DataError("empty training corpus")

    if smoothing == "witten-bell":
        freq = Counter(t for s in sentences for t in s)
        sentences = [[t if freq[t] > 1 else UNK for t in s] for s in sentences]

    counts: list[dict] = [defaultdict(Counter) for _ in range(order)]
    k = order - 1
    for s in sentences:
        seq = s if order == 1 else [BOS] * k + s + [EOS]
        for i in range(k if order > 1 else 0, len(seq)):
            word = seq[i]
            for n in range(order):
                if i - n < 0:
                    break
                counts[n][tuple(seq[i - n : i])][word] += 1

    vocab = {w for nxt in counts[0].values() for w in nxt}
    if smoothing == "witten-bell":
        vocab.add(UNK)
    frozen = [{h: dict(nxt) for h, nxt in level.items()} for level in counts]
    return NGramModel(order, smoothing, frozen, frozenset(vocab))


def train_lm(path, order: int = 3, smoothing: str = "witten-bell") -> NGramModel:
    return train_lm_from_lines(read_lines(path), order, smoothing)


def cross_entropy(model: NGramModel, x: TokenSeq) -> float:
    if not x:
        raise DataError("cross-entropy undefined for empty input")
    return -math.fsum(model.logprob_terms(x)) / len(x)


def perplexity(model: NGramModel, x: TokenSeq) -> float:
    return math.exp(cross_entropy(model, x))
