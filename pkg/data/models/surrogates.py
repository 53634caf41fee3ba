from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from errors import InvalidParameterError

class Adaptation(Enum):
    """Whether a surrogate was trained on clean audio or on self-encrypted audio."""
    IGNORANT = "ignorant"
    ADAPTED = "adapted"

@dataclass(frozen=True, eq=False)
class SurrogateASR:
    """
    Template recognizer: one mean normalized log-spectrum per vocabulary token.

    A token slot is decoded to the template with the highest cosine similarity.
    """
    templates: np.ndarray
    adaptation: Adaptation = Adaptation.IGNORANT
    n_keys: Optional[int] = None

    def __post_init__(self):
        templates = np.array(self.templates, dtype=np.float64, copy=True)
        if templates.ndim != 2 or templates.shape[0] < 1:
            raise InvalidParameterError(f"templates must have shape (vocab, bins), got {templates.shape}")
        templates.setflags(write=False)
        object.__setattr__(self, "templates", templates)

    @property
    def vocab_size(self) -> int:
        return self.templates.shape[0]

@dataclass(frozen=True, eq=False)
class SurrogateASV:
    """
    Spectral-mean speaker embedder.

    An embedding is the utterance's long-term log-spectrum minus the batch
    mean, divided per bin by the spread measured on the training data.
    """
    bin_scale: np.ndarray
    adaptation: Adaptation = Adaptation.IGNORANT
    n_keys: Optional[int] = None

    def __post_init__(self):
        scale = np.array(self.bin_scale, dtype=np.float64, copy=True).reshape(-1)
        if scale.size == 0 or np.any(scale <= 0):
            raise InvalidParameterError("bin scale must be a non-empty positive vector")
        scale.setflags(write=False)
        object.__setattr__(self, "bin_scale", scale)
