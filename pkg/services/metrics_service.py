"""
Recognition metrics: corpus WER, EER over similarity scores, cosine scoring.
"""
import logging
from typing import Iterable, List, Sequence, Union

import numpy as np

from data.models.metric_types import EditCounts, OperatingPoint, ScoreSet, TranscriptPair, normalize_words
from errors import InvalidInputError, UndefinedMetricError, UndefinedSimilarityError

logger = logging.getLogger(__name__)

def align(reference: Union[str, Sequence[str]], hypothesis: Union[str, Sequence[str]]) -> EditCounts:
    """
    Minimum-edit alignment of two word sequences with unit costs.

    Ties in the backtrace prefer a match/substitution, then an insertion,
    then a deletion, so counts are deterministic.

    Args:
        reference: Reference words (or a string to normalize)
        hypothesis: Hypothesis words (or a string to normalize)

    Returns:
        Substitution, deletion and insertion counts plus the reference length
    """
    ref = normalize_words(reference)
    hyp = normalize_words(hypothesis)
    n, m = len(ref), len(hyp)
    cost = np.zeros((n + 1, m + 1), dtype=np.int64)
    cost[:, 0] = np.arange(n + 1)
    cost[0, :] = np.arange(m + 1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            mismatch = 0 if ref[i - 1] == hyp[j - 1] else 1
            cost[i, j] = min(cost[i - 1, j] + 1, cost[i, j - 1] + 1, cost[i - 1, j - 1] + mismatch)

    counts = EditCounts(reference_words=n)
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            mismatch = 0 if ref[i - 1] == hyp[j - 1] else 1
            if cost[i, j] == cost[i - 1, j - 1] + mismatch:
                counts.substitutions += mismatch
                i -= 1
                j -= 1
                continue
        if j > 0 and cost[i, j] == cost[i, j - 1] + 1:
            counts.insertions += 1
            j -= 1
        else:
            counts.deletions += 1
            i -= 1
    return counts

def edit_counts(pairs: Iterable[TranscriptPair]) -> EditCounts:
    """Summed alignment counts over a corpus."""
    total = EditCounts()
    for pair in pairs:
        total = total + align(pair.reference, pair.hypothesis)
    return total

def wer(pairs: Iterable[TranscriptPair]) -> float:
    """
    Corpus word error rate in percent: summed edits over summed reference words.

    May exceed 100 when hypotheses carry many insertions.
    """
    total = edit_counts(pairs)
    if total.reference_words == 0:
        raise UndefinedMetricError("WER is undefined without reference words")
    return 100.0 * total.errors / total.reference_words

def error_rates(scores: ScoreSet) -> List[OperatingPoint]:
    """
    False-accept / false-reject rates at every distinct score threshold.

    A trial is accepted when its score is >= the threshold. The list runs from
    the strictest point (threshold +inf: FAR 0, FRR 1) down to the lowest
    score (FAR 1, FRR 0).
    """
    targets = np.sort(scores.targets)
    nontargets = np.sort(scores.nontargets)
    if targets.size == 0 or nontargets.size == 0:
        raise UndefinedMetricError("EER needs at least one target and one non-target score")
    thresholds = np.unique(scores.scores)[::-1]
    rejected_targets = np.searchsorted(targets, thresholds, side="left")
    accepted_nontargets = nontargets.size - np.searchsorted(nontargets, thresholds, side="left")
    points = [OperatingPoint(float("inf"), 0.0, 1.0)]
    for threshold, rejected, accepted in zip(thresholds, rejected_targets, accepted_nontargets):
        points.append(OperatingPoint(
            float(threshold), float(accepted) / nontargets.size, float(rejected) / targets.size))
    return points

def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))

def _lower_hull(points: np.ndarray) -> List[np.ndarray]:
    order = np.lexsort((points[:, 1], points[:, 0]))
    hull: List[np.ndarray] = []
    for point in points[order]:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    return hull

def eer(scores: ScoreSet) -> float:
    """
    Equal error rate in percent.

    The (FAR, FRR) operating points are joined along their lower convex hull
    and the EER is where that curve meets FAR = FRR, interpolating linearly
    between the two hull vertices that bracket the crossing. Only the ranking
    of scores matters.

    Args:
        scores: At least one target and one non-target score

    Returns:
        EER in [0, 100]
    """
    points = np.array([(p.false_accept_rate, p.false_reject_rate) for p in error_rates(scores)])
    hull = _lower_hull(points)
    previous = None
    for vertex in hull:
        gap = vertex[0] - vertex[1]
        if gap >= 0:
            if previous is None:
                return 100.0 * float(vertex[0])
            previous_gap = previous[0] - previous[1]
            weight = -previous_gap / (gap - previous_gap)
            value = previous[0] + weight * (vertex[0] - previous[0])
            return float(np.clip(100.0 * value, 0.0, 100.0))
        previous = vertex
    # the hull always ends at (1, 0)
    return 100.0

def cosine_similarity(u: Sequence[float], v: Sequence[float]) -> float:
    """u . v / (|u| |v|), clipped to [-1, 1]."""
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if u.shape != v.shape:
        raise InvalidInputError(f"vectors differ in length: {u.size} vs {v.size}")
    norm = float(np.linalg.norm(u) * np.linalg.norm(v))
    if norm == 0.0:
        raise UndefinedSimilarityError("cosine similarity is undefined for a zero vector")
    return float(np.clip(np.dot(u, v) / norm, -1.0, 1.0))

def cosine_matrix(queries: np.ndarray, references: np.ndarray) -> np.ndarray:
    """Pairwise cosine similarities between rows of two matrices."""
    queries = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    references = np.atleast_2d(np.asarray(references, dtype=np.float64))
    query_norms = np.linalg.norm(queries, axis=1, keepdims=True)
    reference_norms = np.linalg.norm(references, axis=1, keepdims=True)
    if np.any(query_norms == 0) or np.any(reference_norms == 0):
        raise UndefinedSimilarityError("cosine similarity is undefined for a zero vector")
    return np.clip((queries / query_norms) @ (references / reference_norms).T, -1.0, 1.0)
