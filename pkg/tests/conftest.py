import time
from dataclasses import dataclass
from pathlib import Path

import pytest

from bitextfilter.bench import SyntheticBench, build_synthetic_bench
from bitextfilter.corpus import read_bitext
from bitextfilter.langid import train_langid
from bitextfilter.lexical import train_ibm1
from bitextfilter.ngram_lm import train_lm

BENCH_SEED = 20180731
BENCH_PAIRS = 10000


@dataclass
class TrainedBench:
    bench: SyntheticBench
    models: dict
    build_seconds: float

    def config_text(self, *scorers, cutoff=0.25, abs_difference=True, ce_weighting=True):
        m = self.models
        blocks = {
            "de-en": f"[de-en]\nkind = langid\nmodel = {m['langid']}\nsrc_lang = de\ntrg_lang = en\n",
            "adq": (f"[adq]\nkind = adq\nforward = {m['fwd']}\nbackward = {m['bwd']}\n"
                    f"abs_difference = {'yes' if abs_difference else 'no'}\n"
                    f"ce_weighting = {'yes' if ce_weighting else 'no'}\n"),
            "dom": f"[dom]\nkind = dom\nin_model = {m['lm_in']}\nout_model = {m['lm_out']}\ncutoff = {cutoff}\n",
        }
        return "\n".join(blocks[s] for s in scorers)


def train_bench_models(bench: SyntheticBench, out_dir: Path) -> dict:
    out_dir.mkdir(parents=True, exist_ok=True)
    models = {k: out_dir / f"{k}.json" for k in ("langid", "fwd", "bwd", "lm_in", "lm_out")}
    train_langid({lang: bench.langid_sample(lang) for lang in ("de", "en", "fr")}).save(models["langid"])
    seed_pairs = list(read_bitext(bench.seed_src, bench.seed_trg))
    train_ibm1(seed_pairs, 5).save(models["fwd"])
    train_ibm1(seed_pairs, 5, reverse=True).save(models["bwd"])
    train_lm(bench.news, order=3).save(models["lm_in"])
    train_lm(bench.trg, order=3).save(models["lm_out"])
    return models


@pytest.fixture(scope="session")
def trained_bench(tmp_path_factory) -> TrainedBench:
    start = time.perf_counter()
    root = tmp_path_factory.mktemp("bench")
    bench = build_synthetic_bench(root, BENCH_PAIRS, seed=BENCH_SEED)
    models = train_bench_models(bench, root / "models")
    return TrainedBench(bench, models, time.perf_counter() - start)


_ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
