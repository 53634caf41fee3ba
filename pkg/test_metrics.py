from functools import lru_cache
from itertools import product

import numpy as np
import pytest

from data.models.metric_types import EditCounts, ScoreSet, TranscriptPair
from errors import InvalidInputError, UndefinedMetricError, UndefinedSimilarityError
from services.metrics_service import align, cosine_matrix, cosine_similarity, eer, error_rates, wer

def _edit_distance(ref, hyp):
    @lru_cache(maxsize=None)
    def distance(i, j):
        if i == 0 or j == 0:
            return i + j
        return min(distance(i - 1, j) + 1, distance(i, j - 1) + 1,
                   distance(i - 1, j - 1) + (ref[i - 1] != hyp[j - 1]))
    return distance(len(ref), len(hyp))

def _hull_eer(targets, nontargets):
    """Lowest point where a chord between two operating points meets FAR = FRR, in percent."""
    scores = np.concatenate([targets, nontargets])
    points = [(0.0, 1.0)]
    for threshold in np.unique(scores):
        points.append((np.mean(nontargets >= threshold), np.mean(targets < threshold)))
    best = 1.0
    for (x1, y1), (x2, y2) in product(points, repeat=2):
        g1, g2 = x1 - y1, x2 - y2
        if g1 == 0:
            best = min(best, x1)
        elif g1 < 0 < g2:
            weight = -g1 / (g2 - g1)
            best = min(best, x1 + weight * (x2 - x1))
    return 100.0 * best

def _pairs(*rows):
    return [TranscriptPair(ref, hyp) for ref, hyp in rows]

@pytest.mark.parametrize("ref,hyp,expected", [
    ("a b c", "a b c", 0.0),
    ("a b c", "a x c", 100.0 / 3),
    ("a", "x y z", 300.0),
    ("a b c d", "", 100.0),
    ("A  B", "a b", 0.0),
])
def test_wer_examples(ref, hyp, expected):
    assert wer(_pairs((ref, hyp))) == pytest.approx(expected)

def test_wer_aggregates_over_the_corpus():
    """Summed edits over summed reference words, not a mean of per-utterance rates."""
    pairs = _pairs(("a", "b"), ("a b c d e f g h i", "a b c d e f g h i"))
    assert wer(pairs) == pytest.approx(10.0)

def test_wer_needs_reference_words():
    with pytest.raises(UndefinedMetricError):
        wer(_pairs(("", "a b")))

def test_alignment_counts_are_deterministic():
    assert align("a b", "b a") == EditCounts(substitutions=2, deletions=0, insertions=0, reference_words=2)
    assert align("a b c", "a c") == EditCounts(substitutions=0, deletions=1, insertions=0, reference_words=3)
    assert align("a c", "a b c") == EditCounts(substitutions=0, deletions=0, insertions=1, reference_words=2)

def test_alignment_matches_brute_force_distance():
    """Every pair of sequences over {a, b, c} with up to four words each."""
    sequences = [seq for n in range(5) for seq in product("abc", repeat=n)]
    for ref, hyp in product(sequences, repeat=2):
        counts = align(list(ref), list(hyp))
        assert counts.errors == _edit_distance(ref, hyp)
        assert len(hyp) == len(ref) - counts.deletions + counts.insertions

def test_alignment_matches_brute_force_up_to_six_words(rng):
    for _ in range(500):
        ref = tuple(rng.choice(list("abcd"), int(rng.integers(0, 7))))
        hyp = tuple(rng.choice(list("abcd"), int(rng.integers(0, 7))))
        counts = align(list(ref), list(hyp))
        assert counts.errors == _edit_distance(ref, hyp)
        assert counts.reference_words == len(ref)

def test_eer_examples():
    assert eer(ScoreSet.from_arrays([0.9, 0.4], [0.6, 0.1])) == pytest.approx(25.0)
    assert eer(ScoreSet.from_arrays([1.0, 1.0, 1.0], [0.0, 0.0])) == 0.0
    assert eer(ScoreSet.from_arrays([0.5, 0.5], [0.5, 0.5, 0.5])) == pytest.approx(50.0)

def test_eer_is_chance_for_shuffled_labels(rng):
    scores = rng.standard_normal(4000)
    labels = rng.permutation(np.arange(4000) < 2000)
    assert eer(ScoreSet(scores, labels)) == pytest.approx(50.0, abs=2.0)

def test_eer_depends_only_on_ranking(rng):
    targets = rng.normal(1.0, 1.0, 60)
    nontargets = rng.normal(0.0, 1.0, 80)
    base = eer(ScoreSet.from_arrays(targets, nontargets))
    assert eer(ScoreSet.from_arrays(np.exp(targets), np.exp(nontargets))) == pytest.approx(base, abs=1e-9)
    assert eer(ScoreSet.from_arrays(3 * targets - 7, 3 * nontargets - 7)) == pytest.approx(base, abs=1e-9)

def test_eer_matches_brute_force_on_small_sets(rng):
    for _ in range(300):
        n_targets = int(rng.integers(1, 7))
        n_nontargets = int(rng.integers(1, 13 - n_targets))
        # few distinct values so ties are common
        targets = rng.integers(0, 5, n_targets) / 4.0
        nontargets = rng.integers(0, 5, n_nontargets) / 4.0
        expected = _hull_eer(targets, nontargets)
        assert eer(ScoreSet.from_arrays(targets, nontargets)) == pytest.approx(expected, abs=1e-9)

def test_eer_needs_both_classes():
    with pytest.raises(UndefinedMetricError):
        eer(ScoreSet.from_arrays([0.3, 0.4], []))
    with pytest.raises(UndefinedMetricError):
        eer(ScoreSet.from_arrays([], [0.1]))

def test_error_rates_run_from_strict_to_lenient():
    points = error_rates(ScoreSet.from_arrays([0.9, 0.4], [0.6, 0.1]))
    assert [(p.false_accept_rate, p.false_reject_rate) for p in points] == [
        (0.0, 1.0), (0.0, 0.5), (0.5, 0.5), (0.5, 0.0), (1.0, 0.0)]
    assert points[0].threshold == float("inf")

def test_score_records_parse_labels():
    scores = ScoreSet.from_records([(0.3, "target"), (0.1, " NonTarget ")])
    np.testing.assert_array_equal(scores.is_target, [True, False])

def test_cosine_similarity_examples():
    u = np.array([0.3, -1.2, 2.0])
    assert cosine_similarity(u, u) == pytest.approx(1.0)
    assert cosine_similarity(u, -u) == pytest.approx(-1.0)
    assert cosine_similarity([1, 0], [0, 1]) == 0.0

def test_cosine_similarity_rejects_zero_and_mismatched_vectors():
    with pytest.raises(UndefinedSimilarityError):
        cosine_similarity([0, 0], [1, 0])
    with pytest.raises(InvalidInputError):
        cosine_similarity([1, 0], [1, 0, 0])

def test_cosine_matrix_matches_pairwise(rng):
    a = rng.standard_normal((4, 6))
    b = rng.standard_normal((3, 6))
    matrix = cosine_matrix(a, b)
    assert matrix.shape == (4, 3)
    assert matrix[2, 1] == pytest.approx(cosine_similarity(a[2], b[1]))
