import argparse
import logging

from analytics import export_benchmark_table
from cli.commands.base_command import BaseCommand
from data.models.scenario_report import ScenarioReport
from services.attack_service import (DEFAULT_BENCHMARK_SEEDS, DEFAULT_N_KEYS_GRID, run_baseline,
                                     run_benchmark, run_key_correctness, run_scenario1, run_scenario2)
from services.corpus_service import generate_corpus
from state.run_config import RunConfig
from utils import derive_seed, format_percentage

logger = logging.getLogger(__name__)

def add_corpus_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("corpus")
    group.add_argument("--n-speakers", type=int, help="speakers in the synthetic corpus")
    group.add_argument("--utts-per-speaker", type=int, help="utterances per speaker")
    group.add_argument("--tokens-per-utt", type=int, help="tokens per utterance")
    group.add_argument("--vocab-size", type=int, help="distinct tokens (at most 21)")
    parser.add_argument("--config", help="JSON file with corpus and key set settings")

class SimulateCommand(BaseCommand):
    name = "simulate"
    help = "run one attack scenario on a synthetic corpus"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--scenario", type=int, choices=(1, 2), default=1)
        parser.add_argument("--n-keys", type=int, help="keys N (default 3)")
        parser.add_argument("--dim", type=int, help="block size M (default 10)")
        parser.add_argument("--stride", type=int, help="framing hop S (default 5)")
        parser.add_argument("--lpf", action="store_true", help="low-pass the queries (scenario 1)")
        parser.add_argument("--seed", help="hex run seed; the corpus and victim key derive from it")
        variant = parser.add_mutually_exclusive_group()
        variant.add_argument("--identity", action="store_true", help="encrypt with identity matrices")
        variant.add_argument("--baseline", action="store_true", help="skip encryption entirely")
        variant.add_argument("--key-correctness", action="store_true",
                             help="compare encrypted front-end features under the correct and a wrong key")
        parser.add_argument("--out", help="write the JSON report here instead of stdout")
        add_corpus_arguments(parser)

    def execute(self, config: RunConfig) -> int:
        corpus = generate_corpus(seed=derive_seed(config.seed, "corpus"), **config.corpus.to_dict())
        keyset_config = config.keyset_config()
        if config.key_correctness:
            self.emit(run_key_correctness(corpus, keyset_config, config.seed).to_dict(), config.paths.get("out"))
            return 0
        if config.baseline:
            report = run_baseline(corpus, config.scenario, keyset_config, config.seed, config.lpf)
        elif config.scenario == 1:
            report = run_scenario1(corpus, keyset_config, config.lpf, config.seed, identity=config.identity)
        else:
            if config.lpf:
                logger.warning("--lpf only applies to scenario 1; ignored")
            report = run_scenario2(corpus, keyset_config, config.seed, identity=config.identity)
        self.emit(report.to_dict(), config.paths.get("out"))
        return 0

class BenchmarkCommand(BaseCommand):
    name = "benchmark"
    help = "run baselines and both scenarios over seeds and key counts"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--seeds", help="comma-separated hex seeds (default: the five shipped seeds)")
        parser.add_argument("--n-keys-grid", help="comma-separated key counts (default 1,3,5,7,9)")
        parser.add_argument("--dim", type=int, help="block size M (default 10)")
        parser.add_argument("--stride", type=int, help="framing hop S (default 5)")
        parser.add_argument("--no-lpf", dest="lpf", action="store_false", help="skip the low-pass variant")
        parser.add_argument("--workers", type=int, default=1, help="runs executed in parallel")
        parser.add_argument("--out-csv", help="CSV table of every run")
        parser.add_argument("--out", help="write the JSON summary here instead of stdout")
        parser.set_defaults(lpf=True)
        add_corpus_arguments(parser)

    def _log_report(self, report: ScenarioReport) -> None:
        logger.debug("merged %s: WER %s EER %s", report.key, format_percentage(report.wer_percent),
                     format_percentage(report.eer_percent))

    def execute(self, config: RunConfig) -> int:
        state = run_benchmark(
            config.corpus,
            config.seeds or DEFAULT_BENCHMARK_SEEDS,
            config.n_keys_grid or DEFAULT_N_KEYS_GRID,
            dim=config.dim,
            stride=config.stride,
            use_lpf=config.lpf,
            workers=config.workers,
            on_report=self._log_report
        )
        if "out_csv" in config.paths:
            export_benchmark_table(state, config.paths["out_csv"])
        payload = state.summary()
        payload["reports"] = [report.to_dict() for report in state.reports]
        self.emit(payload, config.paths.get("out"))
        return 0
