"""Command-line entry point: ``bitextfilter <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 model/artifact error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import bench, pipeline, selection
from .corpus import load_scores, read_bitext, read_lines, write_lines
from .errors import FilterError, UsageError
from .langid import train_langid
from .lexical import DEFAULT_ITERATIONS, train_ibm1
from .ngram_lm import SMOOTHING_MODES, train_lm

log = logging.getLogger("bitextfilter")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _lang_sample(text: str) -> tuple[str, str]:
    code, sep, path = text.partition("=")
    if not sep or not code or not path:
        raise argparse.ArgumentTypeError(f"expected CODE=PATH, got {text!r}")
    return code, path


def _fractions(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated fractions, got {text!r}") from None


def cmd_train_langid(args):
    samples = dict(args.samples)
    if len(samples) != len(args.samples):
        raise UsageError("a language code was given twice")
    model = train_langid(samples, alpha=args.alpha)
    model.save(args.out)
    log.info("langid model with languages %s -> %s", ",".join(model.languages), args.out)


def cmd_train_lm(args):
    model = train_lm(args.text, order=args.order, smoothing=args.smoothing)
    model.save(args.out)
    if args.dump:
        write_lines(args.dump, model.dump())
    log.info("order-%d %s LM, %d word types -> %s", model.order, model.smoothing, len(model.vocab), args.out)


def cmd_train_ibm1(args):
    pairs = list(read_bitext(args.src, args.trg))
    lowercase = not args.no_lowercase
    jobs = [(args.out, False, args.dump)]
    if args.out_reverse:
        jobs.append((args.out_reverse, True, None))
    for out, reverse, dump in jobs:
        model = train_ibm1(pairs, args.iterations, lowercase=lowercase, reverse=reverse)
        model.save(out)
        if dump:
            write_lines(dump, model.dump())
        log.info("IBM1 %s, %d iterations, log-likelihood %.4f -> %s",
                 "trg->src" if reverse else "src->trg", args.iterations, model.log_likelihoods[-1], out)


def cmd_score(args):
    config = pipeline.PipelineConfig.load(args.config).with_overrides(
        cutoff=args.cutoff,
        abs_difference=False if args.no_abs_difference else None,
        ce_weighting=False if args.no_ce_weighting else None,
    )
    diag = pipeline.score_corpus(config, args.src, args.trg, args.out, args.tsv, workers=args.workers)
    for key, value in sorted(diag.items()):
        log.info("%s: %d", key, value)


def cmd_merge_scores(args):
    merged = pipeline.merge_scores(args.columns, args.out)
    log.info("merged %d columns over %d lines -> %s", len(args.columns), len(merged), args.out)


def cmd_select(args):
    if args.exact:
        counts = [len(line.split()) for line in read_lines(args.trg)]
        result = selection.select_by_budget(load_scores(args.scores, len(counts)), counts, args.budget_words)
    else:
        result = selection.select_streaming(args.scores, args.trg, args.budget_words)
    prefix = args.out_prefix
    selection.emit_subset(result.selected_ids, args.src, args.trg, f"{prefix}.src", f"{prefix}.trg")
    print(f"threshold={result.threshold!r}")
    print(f"selected={len(result.selected_ids)}")
    print(f"words={result.achieved_words}")
    print(f"budget={result.budget}")
    print(f"exhausted={'yes' if result.exhausted else 'no'}")


def _noise_spec(args) -> bench.NoiseSpec:
    return bench.NoiseSpec(args.copy, args.wrong_language, args.misaligned, args.truncated, args.junk,
                           seed=args.seed)


def cmd_bench_generate(args):
    if args.synthetic:
        if not args.out_dir:
            raise UsageError("--synthetic needs --out-dir")
        b = bench.build_synthetic_bench(args.out_dir, args.synthetic, seed=args.seed, spec=_noise_spec(args))
        log.info("synthetic bench with %d pairs in %s", args.synthetic, b.root)
        return
    if not (args.src and args.trg and args.out_prefix):
        raise UsageError("give --synthetic N --out-dir DIR, or --src/--trg/--out-prefix")
    pairs = list(read_bitext(args.src, args.trg))
    third = list(read_lines(args.third)) if args.third else []
    src, trg, labels = bench.generate([p.src_raw for p in pairs], [p.trg_raw for p in pairs],
                                      _noise_spec(args), third)
    write_lines(f"{args.out_prefix}.src", src)
    write_lines(f"{args.out_prefix}.trg", trg)
    write_lines(f"{args.out_prefix}.labels", labels)


def cmd_bench_eval(args):
    labels = bench.read_labels(args.labels)
    scores = load_scores(args.scores, len(labels))
    metrics = bench.rank_eval(scores, labels, args.fractions)
    auc = metrics["auc"]
    print("auc=" + ("absent" if auc is None else repr(auc)))
    for f, p in metrics["precision_at"].items():
        print(f"precision@{f!r}=" + ("absent" if p is None else repr(p)))


def cmd_stats(args):
    summary = pipeline.stats(load_scores(args.scores), bins=args.bins)
    sys.stdout.write(pipeline.format_stats(summary))
    if args.histogram:
        Path(args.histogram).write_text(pipeline.format_histogram(summary), encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bitextfilter", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train-langid", help="train the character n-gram language identifier")
    p.add_argument("samples", nargs="+", type=_lang_sample, metavar="CODE=PATH")
    p.add_argument("--out", required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.set_defaults(func=cmd_train_langid)

    p = sub.add_parser("train-lm", help="train a word n-gram language model")
    p.add_argument("--text", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--smoothing", choices=SMOOTHING_MODES, default="witten-bell")
    p.add_argument("--dump", help="also write a plain-text n-gram count dump")
    p.set_defaults(func=cmd_train_lm)

    p = sub.add_parser("train-ibm1", help="train IBM Model 1 translation tables")
    p.add_argument("--src", required=True)
    p.add_argument("--trg", required=True)
    p.add_argument("--out", required=True, help="t(trg|src) model")
    p.add_argument("--out-reverse", help="also train t(src|trg) into this file")
    p.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS)
    p.add_argument("--no-lowercase", action="store_true")
    p.add_argument("--dump", help="plain-text table dump of the --out model")
    p.set_defaults(func=cmd_train_ibm1)

    p = sub.add_parser("score", help="score a bitext with a pipeline config")
    p.add_argument("--config", required=True)
    p.add_argument("--src", required=True)
    p.add_argument("--trg", required=True)
    p.add_argument("--out", required=True, help="totals, one per line")
    p.add_argument("--tsv", help="per-scorer TSV (default: OUT.tsv)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cutoff", type=float, help="override the cut-off of every dom scorer")
    p.add_argument("--no-abs-difference", action="store_true")
    p.add_argument("--no-ce-weighting", action="store_true")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("merge-scores", help="multiply score files line by line")
    p.add_argument("columns", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_merge_scores)

    p = sub.add_parser("select", help="extract the best subset reaching a word budget")
    p.add_argument("--scores", required=True)
    p.add_argument("--src", required=True)
    p.add_argument("--trg", required=True)
    p.add_argument("--budget-words", type=int, required=True)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--exact", action="store_true", help="in-memory sort instead of streaming passes")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("bench-generate", help="inject labelled noise into a bitext")
    p.add_argument("--synthetic", type=int, metavar="N", help="generate a toy de-en bench of N pairs")
    p.add_argument("--out-dir")
    p.add_argument("--src")
    p.add_argument("--trg")
    p.add_argument("--third", help="third-language sentences for wrong-language noise")
    p.add_argument("--out-prefix")
    p.add_argument("--seed", type=int, default=0)
    for flag, dest in (("--copy", "copy"), ("--wrong-language", "wrong_language"),
                       ("--misaligned", "misaligned"), ("--truncated", "truncated"), ("--junk", "junk")):
        p.add_argument(flag, dest=dest, type=float, default=0.05)
    p.set_defaults(func=cmd_bench_generate)

    p = sub.add_parser("bench-eval", help="ranking AUC and precision against noise labels")
    p.add_argument("--scores", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--fractions", type=_fractions, default=list(bench.DEFAULT_FRACTIONS))
    p.set_defaults(func=cmd_bench_eval)

    p = sub.add_parser("stats", help="summarize a score file")
    p.add_argument("--scores", required=True)
    p.add_argument("--histogram", help="write a TSV histogram here")
    p.add_argument("--bins", type=int, default=10)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        args.func(args)
    except FilterError as exc:
        print(f"bitextfilter: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"bitextfilter: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
