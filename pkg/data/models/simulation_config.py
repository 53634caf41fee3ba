from dataclasses import asdict, dataclass, fields
from typing import Any, Dict

from errors import InvalidParameterError, UnsupportedConfigurationError

@dataclass(frozen=True)
class KeysetConfig:
    """Key count N, block size M and framing hop S used by an attack run."""
    n_keys: int = 3
    dim: int = 10
    stride: int = 5

    def __post_init__(self):
        if self.n_keys < 1 or self.dim < 1 or self.stride < 1:
            raise InvalidParameterError(
                f"n_keys, dim and stride must be >= 1, got N={self.n_keys}, M={self.dim}, S={self.stride}")
        if self.stride > self.dim:
            raise UnsupportedConfigurationError(f"stride {self.stride} exceeds block size {self.dim}")

    def with_n_keys(self, n_keys: int) -> 'KeysetConfig':
        return KeysetConfig(n_keys=n_keys, dim=self.dim, stride=self.stride)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'KeysetConfig':
        names = {f.name for f in fields(cls)}
        return cls(**{k: int(v) for k, v in data.items() if k in names})

@dataclass(frozen=True)
class CorpusConfig:
    """Size of a synthetic corpus."""
    n_speakers: int = 12
    utts_per_speaker: int = 16
    tokens_per_utt: int = 6
    vocab_size: int = 8

    def __post_init__(self):
        for name in ("n_speakers", "utts_per_speaker", "tokens_per_utt", "vocab_size"):
            if getattr(self, name) < 1:
                raise InvalidParameterError(f"{name} must be >= 1, got {getattr(self, name)}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CorpusConfig':
        names = {f.name for f in fields(cls)}
        return cls(**{k: int(v) for k, v in data.items() if k in names})
