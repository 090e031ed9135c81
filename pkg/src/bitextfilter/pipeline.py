"""Scorer configuration, corpus scoring, score-file merging and summaries.

A pipeline config is an INI-style file with one section per scorer; the
section header is the scorer's (unique) name and ``kind`` selects the
implementation::

    [de-en]
    kind = langid
    model = langid.json
    src_lang = de
    trg_lang = en

    [adq]
    kind = adq
    forward = ibm1.de-en.json
    backward = ibm1.en-de.json

    [dom]
    kind = dom
    in_model = lm.news.json
    out_model = lm.noisy.json
    cutoff = 0.25

Relative paths resolve against the config file's directory.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import scores as S
from .corpus import (ScoreRecord, SentencePair, count_lines, format_score, load_scores, read_bitext,
                     read_lines, write_scores)
from .errors import DataError, FilterError, ModelError, UsageError
from .langid import LangIdModel
from .lexical import LexicalModel, cond_cross_entropy, load_entropy_column
from .ngram_lm import NGramModel, cross_entropy

KINDS = ("langid", "adq", "dom", "sim", "external")
SKIPPED = "skipped"
# cheap hard gates first; columns are still emitted in config order
_EVAL_PRIORITY = {"langid": 0, "external": 1, "dom": 2, "sim": 3, "adq": 4}
_PATH_KEYS = {"model", "forward", "backward", "forward_column", "backward_column",
              "in_model", "out_model", "in_column", "out_column", "embeddings", "column"}
_TRUE = {"1", "yes", "true", "on"}
_FALSE = {"0", "no", "false", "off"}


@dataclass(frozen=True)
class ScorerSpec:
    name: str
    kind: str
    params: dict = field(default_factory=dict)

    def flag(self, key: str, default: bool) -> bool:
        value = self.params.get(key)
        if value is None:
            return default
        value = str(value).lower()
        if value in _TRUE:
            return True
        if value in _FALSE:
            return False
        raise UsageError(f"scorer {self.name!r}: {key} must be a boolean, got {value!r}")


@dataclass(frozen=True)
class PipelineConfig:
    scorers: tuple[ScorerSpec, ...] = ()

    def __post_init__(self):
        names = [s.name for s in self.scorers]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise UsageError(f"duplicate scorer names: {', '.join(dupes)}")
        for s in self.scorers:
            if s.kind not in KINDS:
                raise UsageError(f"scorer {s.name!r}: unknown kind {s.kind!r}; expected one of {KINDS}")

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.scorers]

    def with_overrides(self, cutoff: float | None = None, abs_difference: bool | None = None,
                       ce_weighting: bool | None = None) -> "PipelineConfig":
        specs = []
        for s in self.scorers:
            params = dict(s.params)
            if s.kind == "dom" and cutoff is not None:
                params["cutoff"] = cutoff
            if s.kind == "adq" and abs_difference is not None:
                params["abs_difference"] = "yes" if abs_difference else "no"
            if s.kind == "adq" and ce_weighting is not None:
                params["ce_weighting"] = "yes" if ce_weighting else "no"
            specs.append(dataclasses.replace(s, params=params))
        return PipelineConfig(tuple(specs))

    @classmethod
    def from_text(cls, text: str, base_dir=".") -> "PipelineConfig":
        parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
        try:
            parser.read_string(text)
        except configparser.Error as exc:
            raise UsageError(f"bad pipeline config: {exc}") from None
        base = Path(base_dir)
        specs = []
        for name in parser.sections():
            params = dict(parser[name])
            kind = params.pop("kind", None)
            if kind is None:
                raise UsageError(f"scorer {name!r} has no kind")
            for key in _PATH_KEYS & params.keys():
                params[key] = str(base / params[key])
            specs.append(ScorerSpec(name, kind, params))
        return cls(tuple(specs))

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        config = cls.from_text(text, path.parent)
        for spec in config.scorers:
            for key in _PATH_KEYS & spec.params.keys():
                if not Path(spec.params[key]).exists():
                    raise UsageError(f"scorer {spec.name!r}: {key} path {spec.params[key]} does not exist")
        return config


# --- scorers ----------------------------------------------------------------

def _require(spec: ScorerSpec, *keys):
    missing = [k for k in keys if k not in spec.params]
    if missing:
        raise UsageError(f"scorer {spec.name!r} ({spec.kind}) needs {', '.join(missing)}")
    return [spec.params[k] for k in keys]


class LangIdScorer:
    def __init__(self, spec: ScorerSpec, corpus_len: int):
        path, self.src_lang, self.trg_lang = _require(spec, "model", "src_lang", "trg_lang")
        self.model = LangIdModel.load(path)

    def __call__(self, pair: SentencePair, diag: Counter) -> float:
        model = self.model
        if model.classify(pair.src_raw) != self.src_lang:
            return 0.0
        return 1.0 if model.classify(pair.trg_raw) == self.trg_lang else 0.0


class _EntropySource:
    """Either a model scoring tokens or an external per-line column."""

    def __init__(self, spec, model_key, column_key, loader, corpus_len):
        if column_key in spec.params:
            self.column = load_entropy_column(spec.params[column_key], corpus_len)
            self.model = None
        elif model_key in spec.params:
            self.column = None
            self.model = loader(spec.params[model_key])
        else:
            raise UsageError(f"scorer {spec.name!r} needs {model_key} or {column_key}")


class AdqScorer:
    def __init__(self, spec: ScorerSpec, corpus_len: int):
        self.cfg = S.AdqConfig(spec.flag("abs_difference", True), spec.flag("ce_weighting", True))
        self.fwd = _EntropySource(spec, "forward", "forward_column", LexicalModel.load, corpus_len)
        self.bwd = _EntropySource(spec, "backward", "backward_column", LexicalModel.load, corpus_len)

    def __call__(self, pair: SentencePair, diag: Counter) -> float:
        x, y = pair.src, pair.trg
        if self.fwd.model is not None or self.bwd.model is not None:
            if not x or not y:
                diag["adq_empty_side"] += 1
                return 0.0
        h_fwd = self.fwd.column[pair.id] if self.fwd.model is None else cond_cross_entropy(self.fwd.model, x, y)
        h_bwd = self.bwd.column[pair.id] if self.bwd.model is None else cond_cross_entropy(self.bwd.model, y, x)
        return S.adq(h_fwd, h_bwd, self.cfg)


class DomScorer:
    def __init__(self, spec: ScorerSpec, corpus_len: int):
        try:
            self.cfg = S.DomConfig(float(spec.params.get("cutoff", 0.0)))
        except ValueError as exc:
            raise UsageError(f"scorer {spec.name!r}: {exc}") from None
        self.inside = _EntropySource(spec, "in_model", "in_column", NGramModel.load, corpus_len)
        self.outside = _EntropySource(spec, "out_model", "out_column", NGramModel.load, corpus_len)

    def __call__(self, pair: SentencePair, diag: Counter) -> float:
        y = pair.trg
        if not y and (self.inside.model is not None or self.outside.model is not None):
            diag["dom_empty_target"] += 1
            return 0.0
        h_in = self.inside.column[pair.id] if self.inside.model is None else cross_entropy(self.inside.model, y)
        h_out = self.outside.column[pair.id] if self.outside.model is None else cross_entropy(self.outside.model, y)
        return S.dom(h_in, h_out, self.cfg)


def load_embeddings(path) -> dict[str, np.ndarray]:
    """word2vec text format; an optional "count dim" header line is skipped."""
    vectors = {}
    dim = None
    for lineno, line in enumerate(read_lines(path), start=1):
        parts = line.split()
        if not parts:
            continue
        if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
            continue
        try:
            vec = np.array([float(v) for v in parts[1:]], dtype=np.float64)
        except ValueError:
            raise ModelError(f"{path} line {lineno}: bad embedding values") from None
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise ModelError(f"{path} line {lineno}: expected {dim} values, got {len(vec)}")
        vectors[parts[0]] = vec
    if not vectors:
        raise ModelError(f"no embeddings in {path}")
    return vectors


class SimScorer:
    def __init__(self, spec: ScorerSpec, corpus_len: int):
        (path,) = _require(spec, "embeddings")
        self.vectors = load_embeddings(path)
        self.lowercase = spec.flag("lowercase", False)

    def _lookup(self, tokens):
        found = []
        for t in tokens:
            v = self.vectors.get(t)
            if v is None and self.lowercase:
                v = self.vectors.get(t.lower())
            if v is not None:
                found.append(v)
        return found

    def __call__(self, pair: SentencePair, diag: Counter) -> float:
        return S.sim(self._lookup(pair.src), self._lookup(pair.trg), diag)


class ExternalScorer:
    def __init__(self, spec: ScorerSpec, corpus_len: int):
        (path,) = _require(spec, "column")
        self.column = load_scores(path, corpus_len)

    def __call__(self, pair: SentencePair, diag: Counter) -> float:
        return self.column[pair.id]


_SCORERS = {"langid": LangIdScorer, "adq": AdqScorer, "dom": DomScorer, "sim": SimScorer,
            "external": ExternalScorer}


class Pipeline:
    """Loaded scorers for one config, ready to score pairs."""

    def __init__(self, config: PipelineConfig, corpus_len: int):
        self.config = config
        self.scorers = [_SCORERS[s.kind](s, corpus_len) for s in config.scorers]
        self.eval_order = sorted(range(len(self.scorers)), key=lambda i: _EVAL_PRIORITY[config.scorers[i].kind])

    def score_pair(self, pair: SentencePair, diag: Counter) -> ScoreRecord:
        """Score one pair. Scorers left unevaluated after a zero are absent from
        ``partials``."""
        partials: dict[str, float] = {}
        for i in self.eval_order:
            name = self.config.scorers[i].name
            try:
                value = self.scorers[i](pair, diag)
            except (FilterError, ValueError, IndexError) as exc:
                raise DataError(f"scorer {name!r}: {exc}", line=pair.id + 1) from None
            if not math.isfinite(value):
                raise DataError(f"scorer {name!r} produced non-finite value {value}", line=pair.id + 1)
            partials[name] = value
            if value <= 0.0:
                diag["skipped_after_zero"] += len(self.scorers) - len(partials)
                break
        ordered = {n: partials[n] for n in self.config.names if n in partials}
        return ScoreRecord(pair.id, ordered, S.combine(ordered))


# --- parallel scoring -------------------------------------------------------

_worker_pipeline: Pipeline | None = None


def _init_worker(config: PipelineConfig, corpus_len: int) -> None:
    global _worker_pipeline
    _worker_pipeline = Pipeline(config, corpus_len)


def _score_chunk(chunk: list[SentencePair]):
    diag: Counter = Counter()
    records = [_worker_pipeline.score_pair(p, diag) for p in chunk]
    return records, diag


def _chunks(pairs: Iterable[SentencePair], size: int) -> Iterator[list[SentencePair]]:
    it = iter(pairs)
    while chunk := list(islice(it, size)):
        yield chunk


def _ordered_map(executor, fn, items, window: int):
    """executor.map with a bounded number of chunks in flight."""
    pending = deque()
    for item in items:
        pending.append(executor.submit(fn, item))
        if len(pending) >= window:
            yield pending.popleft().result()
    while pending:
        yield pending.popleft().result()


def iter_scores(config: PipelineConfig, pairs: Iterable[SentencePair], corpus_len: int,
                workers: int = 1, chunk_size: int = 256,
                diagnostics: Counter | None = None) -> Iterator[ScoreRecord]:
    """Yield one ScoreRecord per pair, in corpus order, for any worker count."""
    if workers < 1:
        raise UsageError(f"workers must be ≥1, got {workers}")
    diag = diagnostics if diagnostics is not None else Counter()
    if workers == 1:
        pipeline = Pipeline(config, corpus_len)
        for pair in pairs:
            yield pipeline.score_pair(pair, diag)
        return
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                             initargs=(config, corpus_len)) as pool:
        for records, chunk_diag in _ordered_map(pool, _score_chunk, _chunks(pairs, chunk_size), 4 * workers):
            diag.update(chunk_diag)
            yield from records


def score_corpus(config: PipelineConfig, src_path, trg_path, out_path, tsv_path=None,
                 workers: int = 1, chunk_size: int = 256) -> Counter:
    """Score a bitext; write one total per line to ``out_path`` and a TSV with
    every partial to ``tsv_path`` (default ``<out_path>.tsv``). Returns the
    diagnostics counter."""
    corpus_len = count_lines(src_path)
    tsv_path = Path(tsv_path) if tsv_path else Path(str(out_path) + ".tsv")
    diag: Counter = Counter()
    records = iter_scores(config, read_bitext(src_path, trg_path), corpus_len, workers, chunk_size, diag)
    with open(out_path, "w", encoding="utf-8", newline="\n") as out, \
            open(tsv_path, "w", encoding="utf-8", newline="\n") as tsv:
        tsv.write("\t".join(["id", *config.names, "total"]) + "\n")
        for rec in records:
            cells = [format_score(rec.partials[n]) if n in rec.partials else SKIPPED for n in config.names]
            tsv.write("\t".join([str(rec.id), *cells, format_score(rec.total)]) + "\n")
            out.write(format_score(rec.total) + "\n")
    return diag


def read_score_tsv(path) -> tuple[list[str], list[tuple[int, list[float | None], float]]]:
    """Parse a score TSV back into (scorer names, rows)."""
    lines = read_lines(path)
    header = next(lines, None)
    if header is None:
        raise DataError(f"{path} is empty")
    names = header.split("\t")[1:-1]
    rows = []
    for lineno, line in enumerate(lines, start=2):
        cells = line.split("\t")
        if len(cells) != len(names) + 2:
            raise DataError(f"expected {len(names) + 2} columns in {path}", line=lineno)
        partials = [None if c == SKIPPED else float(c) for c in cells[1:-1]]
        rows.append((int(cells[0]), partials, float(cells[-1])))
    return names, rows


# --- score-file utilities ---------------------------------------------------

def merge_scores(columns: Sequence, out_path=None) -> list[float]:
    """Per-line product of clamped values across score files."""
    if not columns:
        raise UsageError("merge needs at least one score file")
    loaded = [load_scores(c) for c in columns]
    n = len(loaded[0])
    for path, col in zip(columns, loaded):
        if len(col) != n:
            raise DataError(f"length mismatch: {columns[0]} has {n} lines, {path} has {len(col)}")
    merged = [S.combine({str(j): col[i] for j, col in enumerate(loaded)}) for i in range(n)]
    if out_path is not None:
        write_scores(out_path, merged)
    return merged


STAT_QUANTILES = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


def stats(values: Sequence[float], bins: int = 10) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    summary = {"count": int(arr.size), "nonzero": int(np.count_nonzero(arr))}
    if arr.size == 0:
        summary.update(quantiles={}, histogram=[])
        return summary
    qs = np.quantile(arr, STAT_QUANTILES)
    summary["quantiles"] = {q: float(v) for q, v in zip(STAT_QUANTILES, qs)}
    lo, hi = float(arr.min()), float(arr.max())
    if lo == hi:
        counts, edges = np.array([arr.size]), np.array([lo, hi])
    else:
        counts, edges = np.histogram(arr, bins=bins, range=(lo, hi))
    summary["histogram"] = [(float(edges[i]), float(edges[i + 1]), int(c)) for i, c in enumerate(counts)]
    return summary


def format_stats(summary: dict) -> str:
    lines = [f"count={summary['count']}"]
    n, nz = summary["count"], summary["nonzero"]
    lines.append(f"nonzero={nz}/{n}")
    if n:
        lines.append(f"nonzero_fraction={nz / n!r}")
    for q, v in summary["quantiles"].items():
        lines.append(f"q{round(q * 100)}={v!r}")
    return "\n".join(lines) + "\n"


def format_histogram(summary: dict) -> str:
    rows = ["lower\tupper\tcount"]
    rows += [f"{lo!r}\t{hi!r}\t{c}" for lo, hi, c in summary["histogram"]]
    return "\n".join(rows) + "\n"
