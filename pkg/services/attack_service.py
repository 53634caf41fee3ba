"""
Attack scenarios against encrypted queries, played out on a synthetic corpus.

Scenario 1: the attacker's recognizers were trained on clean speech and see
only the victim's encrypted, overlap-trimmed queries. Scenario 2: the
attacker knows the algorithm, encrypts its own training data with fresh
random keys per utterance and adapts its recognizers to it.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

import numpy as np

from data.models.conv_frontend import ConvFrontend
from data.models.corpus import SyntheticCorpus, Utterance
from data.models.keyset import SecretKeySet
from data.models.lowpass_spec import LowPassSpec
from data.models.scenario_report import KeyCorrectnessReport, ScenarioReport
from data.models.simulation_config import CorpusConfig, KeysetConfig
from data.models.surrogates import Adaptation
from errors import InvalidParameterError
from services import surrogate_service
from services.cipher_service import encrypt
from services.convfront_service import encrypt_model, verify_equivalence
from services.corpus_service import generate_corpus
from services.framing_service import frame_overlapping
from services.key_service import generate_keyset, identity_keyset
from services.metrics_service import eer, wer
from services.preprocess_service import lowpass, trim_overlap
from state.benchmark_state import BenchmarkState
from utils import derive_seed, format_percentage, format_seed

logger = logging.getLogger(__name__)

ENCRYPTION_MODES = ("victim", "identity", "none")
DEFAULT_N_KEYS_GRID = (1, 3, 5, 7, 9)
DEFAULT_BENCHMARK_SEEDS = (0x5EED01, 0x5EED02, 0x5EED03, 0x5EED04, 0x5EED05)

def victim_keys(config: KeysetConfig, seed: int) -> SecretKeySet:
    """The victim's key set; a larger N with the same seed extends a smaller one."""
    return generate_keyset(config.n_keys, config.dim, derive_seed(seed, "victim"))

def adversary_keys(config: KeysetConfig, seed: int, index: int) -> SecretKeySet:
    """A fresh key set the adversary draws for its index-th training utterance."""
    return generate_keyset(config.n_keys, config.dim, derive_seed(seed, "adversary", index))

def protect(utterance: Utterance, config: KeysetConfig, keys: Optional[SecretKeySet]) -> np.ndarray:
    """
    What leaves the user's device, brought back to the original time scale.

    Overlapping framing, encryption (skipped when keys is None) and overlap
    trimming.
    """
    framed = frame_overlapping(utterance.waveform, config.dim, config.stride)
    if keys is None:
        return trim_overlap(framed)
    return trim_overlap(encrypt(framed, keys))

def _key_source(mode: str, config: KeysetConfig, seed: int) -> Callable[[Optional[int]], Optional[SecretKeySet]]:
    """Keys for the victim (index None) or for adversary utterance `index`."""
    if mode not in ENCRYPTION_MODES:
        raise InvalidParameterError(f"unknown encryption mode {mode!r}")
    if mode == "none":
        return lambda index: None
    if mode == "identity":
        keys = identity_keyset(config.n_keys, config.dim)
        return lambda index: keys
    victim = victim_keys(config, seed)
    return lambda index: victim if index is None else adversary_keys(config, seed, index)

def _report(corpus: SyntheticCorpus, scenario: int, config: KeysetConfig, seed: int, mode: str, use_lpf: bool,
            queries: Sequence[Utterance], query_audio: List[np.ndarray], asr, asv,
            enrollment: Sequence[Utterance], enrollment_audio: List[np.ndarray]) -> ScenarioReport:
    rate = corpus.sample_rate
    hypotheses = surrogate_service.decode(asr, query_audio, rate, corpus.token_samples)
    word_error = wer(surrogate_service.transcript_pairs([q.tokens for q in queries], hypotheses))
    scores = surrogate_service.verification_scores(
        asv, query_audio, [q.speaker_id for q in queries],
        enrollment_audio, [e.speaker_id for e in enrollment], rate)
    equal_error = eer(scores)
    report = ScenarioReport(
        scenario=scenario,
        n_keys=config.n_keys if mode != "none" else 0,
        dim=config.dim,
        stride=config.stride,
        wer_percent=word_error,
        eer_percent=equal_error,
        seed=seed,
        lpf=use_lpf,
        encryption=mode,
        queries=len(queries),
        trials=int(scores.scores.size),
        config={
            "keyset": config.to_dict(),
            "corpus": {
                "n_speakers": corpus.n_speakers,
                "utts_per_speaker": corpus.utts_per_speaker,
                "vocab_size": corpus.n_tokens_vocab,
                "seed": format_seed(corpus.seed)
            }
        }
    )
    logger.info("scenario %d (%s, N=%d%s): WER %s, EER %s", scenario, mode, report.n_keys,
                ", LPF" if use_lpf else "", format_percentage(word_error), format_percentage(equal_error))
    return report

def _scenario1(corpus: SyntheticCorpus, config: KeysetConfig, use_lpf: bool, seed: int, mode: str) -> ScenarioReport:
    train, queries = corpus.split()
    rate = corpus.sample_rate
    keys = _key_source(mode, config, seed)(None)
    clean_train = [u.waveform.samples for u in train]
    asr = surrogate_service.train_asr(clean_train, [u.tokens for u in train], corpus.n_tokens_vocab, rate,
                                      corpus.token_samples)
    asv = surrogate_service.train_asv(clean_train, rate)
    query_audio = [protect(q, config, keys) for q in queries]
    if use_lpf:
        spec = LowPassSpec(sample_rate=rate)
        query_audio = [lowpass(q.waveform.with_samples(audio), spec).samples for q, audio in zip(queries, query_audio)]
    return _report(corpus, 1, config, seed, mode, use_lpf, queries, query_audio, asr, asv, train, clean_train)

def _scenario2(corpus: SyntheticCorpus, config: KeysetConfig, seed: int, mode: str) -> ScenarioReport:
    train, queries = corpus.split()
    rate = corpus.sample_rate
    key_source = _key_source(mode, config, seed)
    victim = key_source(None)
    adapted_train = [protect(u, config, key_source(i)) for i, u in enumerate(train)]
    adaptation = Adaptation.ADAPTED if mode != "none" else Adaptation.IGNORANT
    asr = surrogate_service.train_asr(adapted_train, [u.tokens for u in train], corpus.n_tokens_vocab, rate,
                                      corpus.token_samples, adaptation, config.n_keys)
    asv = surrogate_service.train_asv(adapted_train, rate, adaptation, config.n_keys)
    query_audio = [protect(q, config, victim) for q in queries]
    enrollment_audio = [protect(u, config, victim) for u in train]
    return _report(corpus, 2, config, seed, mode, False, queries, query_audio, asr, asv, train, enrollment_audio)

def run_scenario1(corpus: SyntheticCorpus, keyset_config: KeysetConfig, use_lpf: bool = False, seed: int = 0,
                  identity: bool = False) -> ScenarioReport:
    """
    Ignorant attacker.

    Surrogates trained on the clean training half attack the victim's encrypted
    queries; speaker verification enrolls with the clean training half.

    Args:
        corpus: Synthetic corpus (>= 2 speakers, >= 2 utterances each)
        keyset_config: N, M and S
        use_lpf: Low-pass the trimmed queries at 4 kHz
        seed: Run seed; the victim key derives from it
        identity: Encrypt with identity matrices (encryption disabled)

    Returns:
        Corpus WER and EER
    """
    return _scenario1(corpus, keyset_config, use_lpf, seed, "identity" if identity else "victim")

def run_scenario2(corpus: SyntheticCorpus, keyset_config: KeysetConfig, seed: int = 0,
                  identity: bool = False) -> ScenarioReport:
    """
    Semi-informed attacker.

    Training utterances are encrypted with a fresh key set each; enrollment and
    queries use the victim's key set.
    """
    return _scenario2(corpus, keyset_config, seed, "identity" if identity else "victim")

def run_baseline(corpus: SyntheticCorpus, scenario: int, keyset_config: KeysetConfig, seed: int = 0,
                 use_lpf: bool = False) -> ScenarioReport:
    """The scenario pipeline with the cipher removed; framing and trimming stay."""
    if scenario == 1:
        return _scenario1(corpus, keyset_config, use_lpf, seed, "none")
    if scenario == 2:
        return _scenario2(corpus, keyset_config, seed, "none")
    raise InvalidParameterError(f"scenario must be 1 or 2, got {scenario}")

def run_key_correctness(corpus: SyntheticCorpus, keyset_config: KeysetConfig, seed: int = 0,
                        channels: int = 8) -> KeyCorrectnessReport:
    """
    Encrypt a random front-end with the victim key and feed it every query,
    encrypted once with the victim key and once with an unrelated key set.
    """
    if channels < 1:
        raise InvalidParameterError("channels must be >= 1")
    _, queries = corpus.split()
    rng = np.random.default_rng(np.random.SeedSequence(derive_seed(seed, "frontend")))
    plain = ConvFrontend(
        stride=keyset_config.stride,
        kernels=rng.standard_normal((channels, keyset_config.dim)) / np.sqrt(keyset_config.dim),
        bias=0.1 * rng.standard_normal(channels)
    )
    victim = victim_keys(keyset_config, seed)
    wrong = generate_keyset(keyset_config.n_keys, keyset_config.dim, derive_seed(seed, "incorrect"))
    encrypted_model = encrypt_model(plain, victim)
    correct = [verify_equivalence(plain, encrypted_model, victim, q.waveform) for q in queries]
    incorrect = [verify_equivalence(plain, encrypted_model, wrong, q.waveform) for q in queries]
    report = KeyCorrectnessReport(
        n_keys=keyset_config.n_keys,
        dim=keyset_config.dim,
        stride=keyset_config.stride,
        channels=channels,
        utterances=len(queries),
        correct_max_deviation=max(r.max_abs_deviation for r in correct),
        correct_relative_l2=float(np.mean([r.relative_l2 for r in correct])),
        incorrect_max_deviation=max(r.max_abs_deviation for r in incorrect),
        incorrect_relative_l2=float(np.mean([r.relative_l2 for r in incorrect])),
        incorrect_min_relative_l2=min(r.relative_l2 for r in incorrect),
        seed=seed
    )
    logger.info("key correctness N=%d: correct max deviation %.3e, incorrect relative L2 %.3f",
                report.n_keys, report.correct_max_deviation, report.incorrect_relative_l2)
    return report

def run_benchmark(corpus_config: CorpusConfig, seeds: Sequence[int], n_keys_grid: Sequence[int] = DEFAULT_N_KEYS_GRID,
                  dim: int = 10, stride: int = 5, use_lpf: bool = True, workers: int = 1,
                  on_report: Optional[Callable[[ScenarioReport], None]] = None) -> BenchmarkState:
    """
    Baselines, scenario 1 (with and without LPF) and scenario 2 for every (seed, N).

    Each seed gets its own corpus (derived from the seed). Runs may execute on
    a thread pool; reports are merged by (seed, scenario, encryption, lpf, N),
    so the result does not depend on scheduling. on_report sees every report
    in merge-key order once all runs are done.
    """
    if not seeds:
        raise InvalidParameterError("benchmark needs at least one seed")
    if workers < 1:
        raise InvalidParameterError("workers must be >= 1")
    grid = sorted(set(int(n) for n in n_keys_grid))
    base_config = KeysetConfig(n_keys=grid[0], dim=dim, stride=stride)
    tasks: List[Callable[[], ScenarioReport]] = []
    for seed in seeds:
        corpus = generate_corpus(seed=derive_seed(seed, "corpus"), **corpus_config.to_dict())
        tasks.append(lambda c=corpus, s=seed: run_baseline(c, 1, base_config, s))
        tasks.append(lambda c=corpus, s=seed: run_baseline(c, 2, base_config, s))
        for n_keys in grid:
            config = base_config.with_n_keys(n_keys)
            tasks.append(lambda c=corpus, k=config, s=seed: run_scenario1(c, k, False, s))
            if use_lpf:
                tasks.append(lambda c=corpus, k=config, s=seed: run_scenario1(c, k, True, s))
            tasks.append(lambda c=corpus, k=config, s=seed: run_scenario2(c, k, s))
    logger.info("benchmark: %d runs over %d seeds, N in %s", len(tasks), len(seeds), grid)
    state = BenchmarkState(n_keys_grid=grid)
    if workers == 1:
        reports = [task() for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda task: task(), tasks))
    state.extend(reports)
    if on_report is not None:
        for report in state.reports:
            on_report(report)
    return state
