"""
Surrogate recognizers for the attack simulator.

Both work on Welch log-spectra restricted to the speech band the synthetic
corpus occupies. Features are mean-normalized over the batch being processed,
so a spectral tilt shared by every item of a batch cancels out.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import signal

from data.models.corpus import token_word
from data.models.metric_types import ScoreSet, TranscriptPair
from data.models.surrogates import Adaptation, SurrogateASR, SurrogateASV
from errors import InvalidInputError
from services.metrics_service import cosine_matrix

logger = logging.getLogger(__name__)

FEATURE_BAND_HZ = (100.0, 3200.0)
ASR_SEGMENT = 256
ASV_SEGMENT = 512
LOG_FLOOR = 1e-12

def log_spectrum(samples: np.ndarray, sample_rate: int, segment: int) -> np.ndarray:
    """Welch log power spectral density inside FEATURE_BAND_HZ."""
    nperseg = min(segment, samples.size)
    freqs, psd = signal.welch(samples, fs=sample_rate, nperseg=nperseg)
    band = (freqs >= FEATURE_BAND_HZ[0]) & (freqs <= FEATURE_BAND_HZ[1])
    return np.log(psd[band] + LOG_FLOOR)

def token_slots(samples: np.ndarray, token_samples: int) -> List[np.ndarray]:
    """Cut a (possibly trimmed) utterance into round(len / token_samples) token slots."""
    count = max(1, int(round(samples.size / token_samples)))
    return [samples[k * token_samples:min((k + 1) * token_samples, samples.size)] for k in range(count)]

def _normalize(features: np.ndarray) -> np.ndarray:
    return features - features.mean(axis=0, keepdims=True)

def slot_features(utterances: Sequence[np.ndarray], sample_rate: int, token_samples: int) -> Tuple[np.ndarray, List[int]]:
    """
    Batch-normalized log-spectra of every token slot.

    Returns:
        (slots x bins features, number of slots per utterance)
    """
    rows: List[np.ndarray] = []
    counts: List[int] = []
    for samples in utterances:
        slots = token_slots(samples, token_samples)
        rows.extend(log_spectrum(slot, sample_rate, ASR_SEGMENT) for slot in slots)
        counts.append(len(slots))
    if not rows:
        raise InvalidInputError("no token slots to featurize")
    return _normalize(np.vstack(rows)), counts

def train_asr(utterances: Sequence[np.ndarray], transcripts: Sequence[Sequence[int]], vocab_size: int,
              sample_rate: int, token_samples: int, adaptation: Adaptation = Adaptation.IGNORANT,
              n_keys: Optional[int] = None) -> SurrogateASR:
    """Per-token mean of the normalized slot features."""
    features, counts = slot_features(utterances, sample_rate, token_samples)
    labels: List[int] = []
    for tokens, count in zip(transcripts, counts):
        labels.extend(list(tokens)[:count] + [-1] * max(0, count - len(tokens)))
    labels = np.array(labels)
    templates = np.zeros((vocab_size, features.shape[1]))
    for token in range(vocab_size):
        members = features[labels == token]
        if members.shape[0]:
            templates[token] = members.mean(axis=0)
        else:
            logger.warning("token %d never occurs in the training data", token)
    # an all-zero template would make cosine scoring undefined
    templates[~np.any(templates, axis=1)] = LOG_FLOOR
    logger.debug("trained %s ASR on %d slots", adaptation.value, features.shape[0])
    return SurrogateASR(templates, adaptation, n_keys)

def decode(model: SurrogateASR, utterances: Sequence[np.ndarray], sample_rate: int, token_samples: int) -> List[List[int]]:
    """Best-matching token for every slot of every utterance."""
    features, counts = slot_features(utterances, sample_rate, token_samples)
    best = np.argmax(cosine_matrix(features, model.templates), axis=1)
    hypotheses: List[List[int]] = []
    start = 0
    for count in counts:
        hypotheses.append([int(t) for t in best[start:start + count]])
        start += count
    return hypotheses

def transcript_pairs(references: Sequence[Sequence[int]], hypotheses: Sequence[Sequence[int]]) -> List[TranscriptPair]:
    return [
        TranscriptPair(tuple(token_word(t) for t in ref), tuple(token_word(t) for t in hyp))
        for ref, hyp in zip(references, hypotheses)
    ]

def utterance_features(utterances: Sequence[np.ndarray], sample_rate: int) -> np.ndarray:
    """Batch-normalized long-term log-spectrum per utterance."""
    if not utterances:
        raise InvalidInputError("no utterances to featurize")
    return _normalize(np.vstack([log_spectrum(u, sample_rate, ASV_SEGMENT) for u in utterances]))

def train_asv(utterances: Sequence[np.ndarray], sample_rate: int, adaptation: Adaptation = Adaptation.IGNORANT,
              n_keys: Optional[int] = None) -> SurrogateASV:
    """Fit the per-bin spread of the normalized training spectra."""
    features = utterance_features(utterances, sample_rate)
    spread = features.std(axis=0)
    spread[spread <= 0] = 1.0
    return SurrogateASV(spread, adaptation, n_keys)

def embed(model: SurrogateASV, utterances: Sequence[np.ndarray], sample_rate: int) -> np.ndarray:
    return utterance_features(utterances, sample_rate) / model.bin_scale

def verification_scores(model: SurrogateASV, queries: Sequence[np.ndarray], query_speakers: Sequence[int],
                        enrollment: Sequence[np.ndarray], enrollment_speakers: Sequence[int],
                        sample_rate: int) -> ScoreSet:
    """
    Score every query against every enrollment utterance.

    A trial is a target trial when both come from the same speaker.
    """
    scores = cosine_matrix(embed(model, queries, sample_rate), embed(model, enrollment, sample_rate))
    same = np.asarray(query_speakers)[:, np.newaxis] == np.asarray(enrollment_speakers)[np.newaxis, :]
    return ScoreSet(scores.reshape(-1), same.reshape(-1))
