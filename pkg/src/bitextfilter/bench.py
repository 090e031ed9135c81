"""Synthetic noisy-bitext benchmark: noise injection and ranking evaluation."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .corpus import read_lines, write_lines
from .errors import DataError, UsageError
from .synth import SentenceGenerator

CLEAN = "clean"
# NoiseSpec field -> label written to the label file
NOISE_CLASSES = {
    "copy_source": "copy",
    "wrong_language": "lang",
    "misaligned": "misaligned",
    "truncated_target": "truncated",
    "junk": "junk",
}
LABELS = (CLEAN, *NOISE_CLASSES.values())
DEFAULT_FRACTIONS = (0.1, 0.25, 0.5, 0.75)

_JUNK_PUNCT = list("!?.,;:-_/|*#+=()[]%&")


@dataclass(frozen=True)
class NoiseSpec:
    copy_source: float = 0.0
    wrong_language: float = 0.0
    misaligned: float = 0.0
    truncated_target: float = 0.0
    junk: float = 0.0
    seed: int = 0

    def __post_init__(self):
        fr = self.fractions()
        for name, value in fr.items():
            if value < 0:
                raise UsageError(f"noise fraction {name} must be ≥0, got {value}")
        if math.fsum(fr.values()) > 1.0 + 1e-12:
            raise UsageError(f"noise fractions sum to {math.fsum(fr.values())} > 1")

    def fractions(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "seed"}

    @classmethod
    def uniform(cls, fraction: float = 0.05, seed: int = 0) -> "NoiseSpec":
        return cls(**{name: fraction for name in NOISE_CLASSES}, seed=seed)


def _junk_line(rng: random.Random) -> str:
    tokens = []
    for _ in range(rng.randint(2, 10)):
        kind = rng.random()
        if kind < 0.4:
            tokens.append(str(rng.randint(0, 10 ** rng.randint(1, 5))))
        elif kind < 0.6:
            tokens.append(f"{rng.randint(1, 28):02d}.{rng.randint(1, 12):02d}.{rng.randint(1990, 2018)}")
        else:
            tokens.append("".join(rng.choice(_JUNK_PUNCT) for _ in range(rng.randint(1, 4))))
    return " ".join(tokens)


def generate(src: Sequence[str], trg: Sequence[str], spec: NoiseSpec,
             third_language: Sequence[str] = ()) -> tuple[list[str], list[str], list[str]]:
    """Corrupt exactly floor(fraction * n) lines per noise class.

    Returns the noisy source lines, noisy target lines and per-line labels.
    """
    n = len(src)
    if n == 0:
        raise DataError("clean bitext is empty")
    if len(trg) != n:
        raise DataError(f"line count mismatch {n} vs {len(trg)}")
    if spec.wrong_language > 0 and not third_language:
        raise UsageError("wrong_language noise needs a third-language sample")
    if spec.misaligned > 0 and n < 2:
        raise UsageError("misaligned noise needs at least 2 lines")

    rng = random.Random(spec.seed)
    order = list(range(n))
    rng.shuffle(order)
    out_src, out_trg = list(src), list(trg)
    labels = [CLEAN] * n

    start = 0
    for name, label in NOISE_CLASSES.items():
        k = math.floor(getattr(spec, name) * n)
        for i in order[start : start + k]:
            labels[i] = label
            if name == "copy_source":
                out_trg[i] = src[i]
            elif name == "wrong_language":
                foreign = rng.choice(third_language)
                if rng.random() < 0.5:
                    out_src[i] = foreign
                else:
                    out_trg[i] = foreign
            elif name == "misaligned":
                j = rng.randrange(n - 1)
                out_trg[i] = trg[j + 1 if j >= i else j]
            elif name == "truncated_target":
                toks = trg[i].split()
                out_trg[i] = " ".join(toks[: len(toks) // 2])
            else:
                out_src[i] = _junk_line(rng)
                out_trg[i] = out_src[i] if rng.random() < 0.5 else _junk_line(rng)
        start += k
    return out_src, out_trg, labels


def read_labels(path) -> list[str]:
    labels = []
    for lineno, line in enumerate(read_lines(path), start=1):
        label = line.strip()
        if label not in LABELS:
            raise DataError(f"unknown label {label!r} in {path}", line=lineno)
        labels.append(label)
    return labels


def auc(scores: Sequence[float], positive: Sequence[bool]) -> float | None:
    """Probability that a random positive outscores a random negative; ties count half."""
    pos = np.asarray(positive, dtype=bool)
    n_pos = int(pos.sum())
    n_neg = len(pos) - n_pos
    if n_pos == 0 or n_neg == 0:
        return None
    ranks = rankdata(np.asarray(scores, dtype=np.float64), method="average")
    return float((ranks[pos].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


def rank_eval(scores: Sequence[float], labels: Sequence[str],
              fractions: Sequence[float] = DEFAULT_FRACTIONS) -> dict:
    if len(scores) != len(labels):
        raise DataError(f"{len(scores)} scores but {len(labels)} labels")
    clean = [lab == CLEAN for lab in labels]
    n = len(scores)
    # stable: equal scores keep corpus order
    ranking = sorted(range(n), key=lambda i: -scores[i])
    precision = {}
    for f in fractions:
        k = max(1, int(f * n)) if n else 0
        precision[f] = sum(clean[i] for i in ranking[:k]) / k if k else None
    return {"auc": auc(scores, clean), "precision_at": precision}


@dataclass
class SyntheticBench:
    """Paths of every file written by :func:`build_synthetic_bench`."""

    root: Path
    src_lang: str = "de"
    trg_lang: str = "en"

    def path(self, name: str) -> Path:
        return self.root / name

    @property
    def src(self) -> Path:
        return self.path(f"bench.{self.src_lang}")

    @property
    def trg(self) -> Path:
        return self.path(f"bench.{self.trg_lang}")

    @property
    def labels(self) -> Path:
        return self.path("bench.labels")

    @property
    def seed_src(self) -> Path:
        return self.path(f"seed.{self.src_lang}")

    @property
    def seed_trg(self) -> Path:
        return self.path(f"seed.{self.trg_lang}")

    @property
    def news(self) -> Path:
        return self.path(f"news.{self.trg_lang}")

    def langid_sample(self, lang: str) -> Path:
        return self.path(f"langid.{lang}")


def build_synthetic_bench(root, n_pairs: int = 10000, seed: int = 0, spec: NoiseSpec | None = None,
                          n_seed: int = 3000, n_news: int = 5000, n_langid: int = 2500) -> SyntheticBench:
    """Write a noisy toy de-en bench plus clean helper data for every model.

    Files: bench.{de,en,labels}, clean.{de,en}, seed.{de,en} (clean bitext for
    the translation tables), news.en (in-domain LM text), langid.{de,en,fr}
    (identifier samples) and third.fr (wrong-language noise source).
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    seeds = random.Random(seed)
    sub = [seeds.randrange(2**32) for _ in range(6)]
    spec = spec or NoiseSpec.uniform(0.05, seed=sub[0])

    clean_src, clean_trg = SentenceGenerator(sub[1]).bitext(n_pairs)
    third = SentenceGenerator(sub[2]).sentences("fr", max(100, n_pairs // 10))
    noisy_src, noisy_trg, labels = generate(clean_src, clean_trg, spec, third)
    seed_src, seed_trg = SentenceGenerator(sub[3]).bitext(n_seed)
    news = SentenceGenerator(sub[4]).sentences("en", n_news)
    gen = SentenceGenerator(sub[5])

    bench = SyntheticBench(root)
    write_lines(root / "clean.de", clean_src)
    write_lines(root / "clean.en", clean_trg)
    write_lines(bench.src, noisy_src)
    write_lines(bench.trg, noisy_trg)
    write_lines(bench.labels, labels)
    write_lines(bench.seed_src, seed_src)
    write_lines(bench.seed_trg, seed_trg)
    write_lines(bench.news, news)
    write_lines(root / "third.fr", third)
    for lang in ("de", "en", "fr"):
        write_lines(bench.langid_sample(lang), gen.sentences(lang, n_langid))
    return bench
