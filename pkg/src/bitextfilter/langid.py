"""Character n-gram language identifier and the pair-level language gate.

Each language gets one additive-smoothed model per n-gram order (1..3).
A sentence is assigned the language with the highest per-n-gram average
log-likelihood; exact ties go to the lexicographically smallest code.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from . import artifacts
from .corpus import SentencePair, read_lines
from .errors import DataError, UsageError

FORMAT_VERSION = 1
UNDETERMINED = "und"
MAX_ORDER = 3
DEFAULT_ALPHA = 0.5


def _normalize(text: str) -> str:
    return " " + " ".join(text.lower().split()) + " "


def char_ngrams(text: str, order: int):
    padded = _normalize(text)
    return (padded[i : i + order] for i in range(len(padded) - order + 1))


@dataclass
class LanguageTable:
    """Smoothed distribution over the character n-grams of one order."""

    counts: dict[str, int]
    alpha: float
    logprobs: dict[str, float] = field(init=False, repr=False)
    unseen_logprob: float = field(init=False)

    def __post_init__(self):
        total = sum(self.counts.values())
        # one pseudo-event holds the reserve for every unseen n-gram
        denom = total + self.alpha * (len(self.counts) + 1)
        self.logprobs = {g: math.log((c + self.alpha) / denom) for g, c in self.counts.items()}
        self.unseen_logprob = math.log(self.alpha / denom)

    def total_mass(self) -> float:
        return math.fsum(math.exp(lp) for lp in self.logprobs.values()) + math.exp(self.unseen_logprob)


@dataclass
class LangIdModel:
    tables: dict[str, list[LanguageTable]]
    alpha: float = DEFAULT_ALPHA
    max_order: int = MAX_ORDER

    @property
    def languages(self) -> list[str]:
        return sorted(self.tables)

    def log_likelihood(self, text: str, lang: str) -> float:
        """Average log-probability per character n-gram over all orders."""
        total = 0.0
        n = 0
        for table, order in zip(self.tables[lang], range(1, self.max_order + 1)):
            lp, unseen = table.logprobs, table.unseen_logprob
            for g in char_ngrams(text, order):
                total += lp.get(g, unseen)
                n += 1
        return total / n if n else float("-inf")

    def classify(self, sentence: str) -> str:
        if sum(1 for ch in sentence if not ch.isspace()) < 3:
            return UNDETERMINED
        best, best_score = UNDETERMINED, float("-inf")
        for lang in self.languages:
            score = self.log_likelihood(sentence, lang)
            if score > best_score:
                best, best_score = lang, score
        return best

    def save(self, path) -> None:
        payload = {
            "alpha": self.alpha,
            "max_order": self.max_order,
            "counts": {lang: [t.counts for t in tables] for lang, tables in sorted(self.tables.items())},
        }
        artifacts.save(path, "langid", FORMAT_VERSION, payload)

    @classmethod
    def load(cls, path) -> "LangIdModel":
        doc = artifacts.load(path, "langid", FORMAT_VERSION)
        alpha = doc["alpha"]
        tables = {
            lang: [LanguageTable(dict(c), alpha) for c in per_order] for lang, per_order in doc["counts"].items()
        }
        return cls(tables, alpha, doc["max_order"])


def count_ngrams(lines, max_order: int = MAX_ORDER) -> list[Counter]:
    counters = [Counter() for _ in range(max_order)]
    for line in lines:
        if not line.strip():
            continue
        for order in range(1, max_order + 1):
            counters[order - 1].update(char_ngrams(line, order))
    return counters


def train_langid_from_texts(samples: dict[str, list[str]], alpha: float = DEFAULT_ALPHA,
                            max_order: int = MAX_ORDER) -> LangIdModel:
    if len(samples) < 2:
        raise UsageError(f"need ≥2 languages, got {len(samples)}")
    if UNDETERMINED in samples:
        raise UsageError(f"{UNDETERMINED!r} is reserved and cannot be a training language")
    tables = {}
    for lang in sorted(samples):
        counters = count_ngrams(samples[lang], max_order)
        if not counters[0]:
            raise DataError(f"empty sample for language {lang!r}")
        # sorted keys keep the serialized artifact independent of input order
        tables[lang] = [LanguageTable(dict(sorted(c.items())), alpha) for c in counters]
    return LangIdModel(tables, alpha, max_order)


def train_langid(samples: dict[str, str], alpha: float = DEFAULT_ALPHA) -> LangIdModel:
    """Train from a mapping of language code to sample text file."""
    if len(samples) < 2:
        raise UsageError(f"need ≥2 languages, got {len(samples)}")
    texts = {lang: list(read_lines(path)) for lang, path in samples.items()}
    return train_langid_from_texts(texts, alpha)


def classify(model: LangIdModel, sentence: str) -> str:
    return model.classify(sentence)


def lang_gate(model: LangIdModel, pair: SentencePair, src_lang: str, trg_lang: str) -> float:
    if model.classify(pair.src_raw) != src_lang:
        return 0.0
    return 1.0 if model.classify(pair.trg_raw) == trg_lang else 0.0
