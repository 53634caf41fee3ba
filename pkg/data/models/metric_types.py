from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Tuple, Union

import numpy as np

from errors import InvalidInputError

def normalize_words(text: Union[str, Iterable[str]]) -> Tuple[str, ...]:
    """Lowercase and split on whitespace; a pre-split sequence is re-normalized."""
    if not isinstance(text, str):
        text = " ".join(text)
    return tuple(text.lower().split())

@dataclass(frozen=True)
class TranscriptPair:
    """Reference and hypothesis word sequences for one utterance."""
    reference: Tuple[str, ...]
    hypothesis: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "reference", normalize_words(self.reference))
        object.__setattr__(self, "hypothesis", normalize_words(self.hypothesis))

@dataclass
class EditCounts:
    """Minimum-edit alignment counts between a hypothesis and its reference."""
    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    reference_words: int = 0

    @property
    def errors(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    def __add__(self, other: 'EditCounts') -> 'EditCounts':
        return EditCounts(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.reference_words + other.reference_words
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "substitutions": self.substitutions,
            "deletions": self.deletions,
            "insertions": self.insertions,
            "reference_words": self.reference_words
        }

class ScoreLabel(Enum):
    TARGET = "target"
    NONTARGET = "nontarget"

@dataclass(frozen=True, eq=False)
class ScoreSet:
    """Similarity scores with target / non-target labels."""
    scores: np.ndarray
    is_target: np.ndarray

    def __post_init__(self):
        scores = np.array(self.scores, dtype=np.float64, copy=True).reshape(-1)
        is_target = np.array(self.is_target, dtype=bool, copy=True).reshape(-1)
        if scores.shape != is_target.shape:
            raise InvalidInputError("scores and labels differ in length")
        if not np.all(np.isfinite(scores)):
            raise InvalidInputError("scores must be finite")
        scores.setflags(write=False)
        is_target.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "is_target", is_target)

    @classmethod
    def from_records(cls, records: Iterable[Tuple[float, Union[str, ScoreLabel]]]) -> 'ScoreSet':
        scores: List[float] = []
        labels: List[bool] = []
        for score, label in records:
            label = label if isinstance(label, ScoreLabel) else ScoreLabel(str(label).strip().lower())
            scores.append(float(score))
            labels.append(label is ScoreLabel.TARGET)
        return cls(np.array(scores), np.array(labels, dtype=bool))

    @classmethod
    def from_arrays(cls, target_scores: Iterable[float], nontarget_scores: Iterable[float]) -> 'ScoreSet':
        targets = np.asarray(list(target_scores), dtype=np.float64)
        nontargets = np.asarray(list(nontarget_scores), dtype=np.float64)
        return cls(
            np.concatenate([targets, nontargets]),
            np.concatenate([np.ones(targets.size, bool), np.zeros(nontargets.size, bool)])
        )

    @property
    def targets(self) -> np.ndarray:
        return self.scores[self.is_target]

    @property
    def nontargets(self) -> np.ndarray:
        return self.scores[~self.is_target]

@dataclass(frozen=True)
class OperatingPoint:
    """Acceptance threshold with its false-accept and false-reject rates (fractions)."""
    threshold: float
    false_accept_rate: float
    false_reject_rate: float

    def to_dict(self) -> Dict[str, Any]:
        # null stands for the reject-everything point at +inf
        threshold = self.threshold if np.isfinite(self.threshold) else None
        return {"threshold": threshold, "far": self.false_accept_rate, "frr": self.false_reject_rate}
