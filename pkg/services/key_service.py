import logging
from pathlib import Path
from typing import Union

import numpy as np

from data.models.keyset import KeyProvenance, KeyValidationReport, SecretKeySet
from data.files.key_file import read_key_file, write_key_file
from errors import IntegrityError, InvalidParameterError
from utils import check_seed, format_fingerprint

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOLERANCE = 1e-10
LOAD_TOLERANCE = 1e-8

def key_stream(seed: int) -> np.random.Generator:
    """
    Deterministic generator for key material.

    Philox is a counter-based generator built from a reduced-round block
    cipher; the full 256-bit seed goes through SeedSequence.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(check_seed(seed))))

def haar_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    """One Haar-distributed matrix from O(dim): QR of a Gaussian matrix, columns sign-corrected by diag(R)."""
    gaussian = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(gaussian)
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    return q * signs

def generate_keyset(n_keys: int, dim: int, seed: int) -> SecretKeySet:
    """
    Generate N random orthogonal M x M matrices from a seed.

    Matrices are drawn one after another from the same stream, so a larger
    n_keys with the same seed extends a smaller key set.

    Args:
        n_keys: Number of matrices N (>= 1)
        dim: Matrix dimension M (>= 1)
        seed: 256-bit seed

    Returns:
        The key set, bit-identical for identical arguments
    """
    if n_keys < 1 or dim < 1:
        raise InvalidParameterError(f"n_keys and dim must be >= 1, got n_keys={n_keys}, dim={dim}")
    rng = key_stream(seed)
    matrices = np.stack([haar_orthogonal(rng, dim) for _ in range(n_keys)])
    keys = SecretKeySet(matrices, KeyProvenance(seed=check_seed(seed)))
    logger.debug("generated key set N=%d M=%d fingerprint=%s", n_keys, dim, format_fingerprint(keys.fingerprint()))
    return keys

def keyset_fingerprint(keys: SecretKeySet) -> bytes:
    """SHA-256 over the little-endian float64 matrix payload."""
    return keys.fingerprint()

def identity_keyset(n_keys: int, dim: int) -> SecretKeySet:
    """N identity matrices: encryption that changes nothing."""
    if n_keys < 1 or dim < 1:
        raise InvalidParameterError(f"n_keys and dim must be >= 1, got n_keys={n_keys}, dim={dim}")
    return SecretKeySet(np.broadcast_to(np.eye(dim), (n_keys, dim, dim)))

def keyset_from_matrices(matrices: np.ndarray) -> SecretKeySet:
    """Import explicit matrices (interop path); validate separately."""
    return SecretKeySet(np.asarray(matrices, dtype=np.float64))

def validate_keyset(keys: SecretKeySet, tol: float = ORTHOGONALITY_TOLERANCE) -> KeyValidationReport:
    """
    Report max|K K^T - I| and ||det K| - 1| for every matrix.

    Args:
        keys: Key set to check
        tol: Pass threshold applied to both deviations

    Returns:
        A report; it never raises on failing matrices
    """
    if tol < 0:
        raise InvalidParameterError("tolerance must be non-negative")
    eye = np.eye(keys.dim)
    gram = keys.matrices @ np.swapaxes(keys.matrices, 1, 2)
    orthogonality = np.max(np.abs(gram - eye), axis=(1, 2))
    determinant = np.abs(np.abs(np.linalg.det(keys.matrices)) - 1.0)
    return KeyValidationReport(
        tolerance=float(tol),
        orthogonality_deviation=[float(v) for v in orthogonality],
        determinant_deviation=[float(v) for v in determinant]
    )

def save_keyset(keys: SecretKeySet, path: Union[str, Path]) -> Path:
    """Write the binary key file."""
    return write_key_file(keys, path)

def load_keyset(path: Union[str, Path]) -> SecretKeySet:
    """Read a key file and re-validate orthogonality at 1e-8."""
    keys = read_key_file(path)
    report = validate_keyset(keys, LOAD_TOLERANCE)
    if not report.passed:
        raise IntegrityError(
            f"key file {path} fails orthogonality check: max deviation {report.max_deviation:.3e}")
    logger.info("loaded key set N=%d M=%d from %s", keys.n_keys, keys.dim, path)
    return keys
