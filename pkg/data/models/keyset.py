from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import hashlib

import numpy as np

from errors import InvalidParameterError
from utils import format_seed

@dataclass(frozen=True)
class KeyProvenance:
    """Where a key set came from: a 256-bit seed, or explicit matrices."""
    seed: Optional[int] = None

    @property
    def is_explicit(self) -> bool:
        return self.seed is None

    def to_dict(self) -> Dict[str, Any]:
        if self.is_explicit:
            return {"kind": "explicit"}
        return {"kind": "seed", "seed": format_seed(self.seed)}

@dataclass(frozen=True)
class SecretKeySet:
    """
    N orthogonal M x M matrices (the multi-matrix secret key).

    Matrices are float64, stored as a read-only (N, M, M) array. Block i of a
    signal is multiplied by matrices[i % N]. Orthogonality is not enforced here;
    see key_service.validate_keyset.
    """
    matrices: np.ndarray
    provenance: KeyProvenance = field(default_factory=KeyProvenance)

    def __post_init__(self):
        matrices = np.array(self.matrices, dtype=np.float64, copy=True)
        if matrices.ndim == 2:
            matrices = matrices[np.newaxis]
        if matrices.ndim != 3 or matrices.shape[1] != matrices.shape[2]:
            raise InvalidParameterError(f"key matrices must have shape (N, M, M), got {matrices.shape}")
        if matrices.shape[0] < 1 or matrices.shape[1] < 1:
            raise InvalidParameterError("a key set needs n_keys >= 1 and dim >= 1")
        matrices.setflags(write=False)
        object.__setattr__(self, "matrices", matrices)

    @property
    def n_keys(self) -> int:
        return self.matrices.shape[0]

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def key_for_block(self, block_index: int) -> np.ndarray:
        """Matrix applied to the 0-based block index."""
        return self.matrices[block_index % self.n_keys]

    def payload_bytes(self) -> bytes:
        """Little-endian float64 entries, row-major, K_1..K_N."""
        return self.matrices.astype("<f8").tobytes()

    def fingerprint(self) -> bytes:
        """SHA-256 of the matrix payload; for audit only."""
        return hashlib.sha256(self.payload_bytes()).digest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SecretKeySet):
            return NotImplemented
        return self.matrices.shape == other.matrices.shape and bool(np.array_equal(self.matrices, other.matrices))

    def __hash__(self) -> int:
        return hash(self.fingerprint())

@dataclass
class KeyValidationReport:
    """Per-matrix orthogonality and determinant deviations."""
    tolerance: float
    orthogonality_deviation: List[float]
    determinant_deviation: List[float]

    @property
    def passed(self) -> bool:
        return all(d <= self.tolerance for d in self.orthogonality_deviation + self.determinant_deviation)

    @property
    def max_deviation(self) -> float:
        values = self.orthogonality_deviation + self.determinant_deviation
        return max(values) if values else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tolerance": self.tolerance,
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "matrices": [
                {"index": i, "orthogonality_deviation": o, "determinant_deviation": d}
                for i, (o, d) in enumerate(zip(self.orthogonality_deviation, self.determinant_deviation))
            ]
        }
