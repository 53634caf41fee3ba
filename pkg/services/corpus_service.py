"""
Synthetic speech-like corpus for the attack simulator.

Tokens are pairs of narrow noise bands; speakers add a harmonic voice shaped
by three formants. Everything is a function of the corpus seed.
"""
import logging
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np

from data.models.corpus import SpeakerProfile, SyntheticCorpus, Utterance
from data.models.waveform import DEFAULT_SAMPLE_RATE, Waveform
from errors import InvalidParameterError
from utils import check_seed, derive_seed, format_seed

logger = logging.getLogger(__name__)

TOKEN_SAMPLES = 1024
BAND_CENTERS_HZ = np.linspace(250.0, 1450.0, 7)
BAND_PATTERNS = tuple(combinations(range(len(BAND_CENTERS_HZ)), 2))
MAX_VOCAB = len(BAND_PATTERNS)

F0_RANGE_HZ = (90.0, 260.0)
FORMANT_RANGES_HZ = ((300.0, 800.0), (900.0, 1800.0), (2000.0, 3000.0))
FORMANT_BANDWIDTH_HZ = (80.0, 160.0)
VOICE_CEILING_HZ = 3600.0

BAND_HALF_WIDTH_HZ = 30.0
PARTIALS_PER_BAND = 6
VOICE_GAIN = 0.8
NOISE_LEVEL = 0.01
PEAK_LEVEL = 0.5

def _rng(seed: int, *labels) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(derive_seed(seed, *labels)))

def token_patterns(vocab_size: int, seed: int) -> Tuple[Tuple[int, int], ...]:
    """Band-index pairs assigned to token ids 0..vocab_size-1."""
    if not 1 <= vocab_size <= MAX_VOCAB:
        raise InvalidParameterError(f"vocabulary size must be in [1, {MAX_VOCAB}], got {vocab_size}")
    order = _rng(seed, "vocabulary").permutation(MAX_VOCAB)[:vocab_size]
    return tuple(BAND_PATTERNS[i] for i in order)

def speaker_profile(speaker_id: int, seed: int) -> SpeakerProfile:
    rng = _rng(seed, "speaker", speaker_id)
    f0 = float(rng.uniform(*F0_RANGE_HZ))
    formants = tuple(
        (float(rng.uniform(low, high)), float(rng.uniform(*FORMANT_BANDWIDTH_HZ)))
        for low, high in FORMANT_RANGES_HZ
    )
    return SpeakerProfile(speaker_id, f0, formants)

def _formant_gain(frequencies: np.ndarray, formants: Sequence[Tuple[float, float]]) -> np.ndarray:
    gain = np.zeros_like(frequencies)
    for centre, bandwidth in formants:
        gain += 1.0 / (1.0 + ((frequencies - centre) / bandwidth) ** 2)
    return gain

def _band_noise(rng: np.random.Generator, centre: float, t: np.ndarray) -> np.ndarray:
    freqs = centre + rng.uniform(-BAND_HALF_WIDTH_HZ, BAND_HALF_WIDTH_HZ, PARTIALS_PER_BAND)
    phases = rng.uniform(0.0, 2 * np.pi, PARTIALS_PER_BAND)
    return np.sin(2 * np.pi * freqs[:, np.newaxis] * t + phases[:, np.newaxis]).sum(axis=0)

def synthesize(profile: SpeakerProfile, tokens: Sequence[int], patterns: Sequence[Tuple[int, int]],
               seed: int, sample_rate: int = DEFAULT_SAMPLE_RATE) -> np.ndarray:
    """
    Waveform of one utterance.

    Deterministic in (seed, speaker, token sequence): the same speaker saying
    the same tokens under the same seed yields identical samples.
    """
    rng = _rng(seed, "utterance", profile.speaker_id, len(tokens), *tokens)
    t_token = np.arange(TOKEN_SAMPLES) / sample_rate
    content = np.concatenate([
        sum(_band_noise(rng, BAND_CENTERS_HZ[band], t_token) for band in patterns[token])
        for token in tokens
    ])
    content /= np.sqrt(np.mean(content ** 2))

    t = np.arange(content.size) / sample_rate
    f0 = profile.f0_hz * (1.0 + rng.uniform(-0.02, 0.02))
    harmonics = f0 * np.arange(1, int(VOICE_CEILING_HZ // f0) + 1)
    amplitudes = _formant_gain(harmonics, profile.formants)
    phases = rng.uniform(0.0, 2 * np.pi, harmonics.size)
    voice = (amplitudes[:, np.newaxis] * np.sin(2 * np.pi * harmonics[:, np.newaxis] * t + phases[:, np.newaxis])).sum(axis=0)
    voice /= np.sqrt(np.mean(voice ** 2))

    samples = content + VOICE_GAIN * voice + NOISE_LEVEL * rng.standard_normal(content.size)
    return PEAK_LEVEL * samples / np.max(np.abs(samples))

def generate_corpus(n_speakers: int, utts_per_speaker: int, tokens_per_utt: int, seed: int,
                    vocab_size: int = 8, sample_rate: int = DEFAULT_SAMPLE_RATE) -> SyntheticCorpus:
    """
    Build a corpus of n_speakers * utts_per_speaker utterances.

    Args:
        n_speakers: Number of speakers (>= 1)
        utts_per_speaker: Utterances per speaker (>= 1)
        tokens_per_utt: Tokens per utterance (>= 1)
        seed: 256-bit corpus seed
        vocab_size: Distinct tokens, at most 21 band patterns
        sample_rate: Hz

    Returns:
        The corpus; regeneration with the same arguments is bit-identical
    """
    for name, value in (("n_speakers", n_speakers), ("utts_per_speaker", utts_per_speaker),
                        ("tokens_per_utt", tokens_per_utt)):
        if value < 1:
            raise InvalidParameterError(f"{name} must be >= 1, got {value}")
    seed = check_seed(seed)
    patterns = token_patterns(vocab_size, seed)
    speakers = tuple(speaker_profile(s, seed) for s in range(n_speakers))
    utterances: List[Utterance] = []
    for profile in speakers:
        for index in range(utts_per_speaker):
            script = _rng(seed, "script", profile.speaker_id, index)
            tokens = tuple(int(v) for v in script.integers(0, vocab_size, tokens_per_utt))
            samples = synthesize(profile, tokens, patterns, seed, sample_rate)
            utterances.append(Utterance(len(utterances), profile.speaker_id, tokens, Waveform(samples, sample_rate)))
    logger.info("generated corpus: %d speakers x %d utterances x %d tokens (vocab %d, seed %s...)",
                n_speakers, utts_per_speaker, tokens_per_utt, vocab_size, format_seed(seed)[:12])
    return SyntheticCorpus(
        utterances=tuple(utterances),
        speakers=speakers,
        vocabulary=patterns,
        sample_rate=sample_rate,
        token_samples=TOKEN_SAMPLES,
        seed=seed,
        utts_per_speaker=utts_per_speaker
    )
