"""Corpus I/O, tokenization and the record types shared by all scorers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import zip_longest
from typing import Iterable, Iterator, Mapping

from .errors import DataError

TokenSeq = list[str]


@dataclass(frozen=True)
class SentencePair:
    id: int
    src_raw: str
    trg_raw: str

    @property
    def src(self) -> TokenSeq:
        return tokenize(self.src_raw)

    @property
    def trg(self) -> TokenSeq:
        return tokenize(self.trg_raw)


@dataclass(frozen=True)
class ScoreRecord:
    id: int
    partials: Mapping[str, float] = field(default_factory=dict)
    total: float = 1.0


def tokenize(text: str) -> TokenSeq:
    """Split on Unicode whitespace. No other normalization."""
    return text.split()


def trg_word_count(pair: SentencePair) -> int:
    return len(tokenize(pair.trg_raw))


def _strip_eol(line: bytes) -> bytes:
    if line.endswith(b"\n"):
        line = line[:-1]
        if line.endswith(b"\r"):
            line = line[:-1]
    return line


def _decode(raw: bytes, path, lineno: int) -> str:
    try:
        return _strip_eol(raw).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(f"invalid UTF-8 in {path} ({exc.reason})", line=lineno) from None


def read_lines(path) -> Iterator[str]:
    """Stream the lines of a UTF-8 file without their line terminators."""
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            yield _decode(raw, path, lineno)


def count_lines(path) -> int:
    with open(path, "rb") as fh:
        return sum(1 for _ in fh)


def read_bitext(src_path, trg_path) -> Iterator[SentencePair]:
    """Yield line-aligned pairs in file order.

    A line-count mismatch is only detectable once the shorter file runs out,
    so pairs before that point have already been yielded when DataError is
    raised.
    """
    with open(src_path, "rb") as fs, open(trg_path, "rb") as ft:
        for idx, (s, t) in enumerate(zip_longest(fs, ft)):
            if s is None or t is None:
                n_src = idx + (0 if s is None else 1 + sum(1 for _ in fs))
                n_trg = idx + (0 if t is None else 1 + sum(1 for _ in ft))
                raise DataError(f"line count mismatch {n_src} vs {n_trg} ({src_path}, {trg_path})")
            yield SentencePair(idx, _decode(s, src_path, idx + 1), _decode(t, trg_path, idx + 1))


def write_lines(path, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def format_score(value: float) -> str:
    # repr is the shortest string that round-trips exactly
    return repr(float(value))


def parse_score(text: str, lineno: int, path=None) -> float:
    try:
        value = float(text.strip())
    except ValueError:
        where = f" in {path}" if path else ""
        raise DataError(f"unparseable score {text.strip()!r}{where}", line=lineno) from None
    if not math.isfinite(value):
        raise DataError(f"non-finite score {text.strip()!r}", line=lineno)
    return value


def read_scores(path) -> Iterator[float]:
    for lineno, line in enumerate(read_lines(path), start=1):
        yield parse_score(line, lineno, path)


def load_scores(path, expected_len: int | None = None) -> list[float]:
    values = list(read_scores(path))
    if expected_len is not None and len(values) != expected_len:
        raise DataError(f"{path} has {len(values)} lines, corpus has {expected_len}")
    return values


def write_scores(path, values: Iterable[float]) -> None:
    write_lines(path, (format_score(v) for v in values))
