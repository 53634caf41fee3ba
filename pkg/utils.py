import hashlib
import logging
import sys
from typing import Optional, Union

import numpy as np

from errors import InvalidInputError, InvalidParameterError

SEED_BITS = 256
SEED_HEX_DIGITS = SEED_BITS // 4

def format_percentage(value: float) -> str:
    """Format a value already expressed in percent."""
    return f"{value:.2f}%"

def format_fingerprint(fingerprint: bytes, length: int = 12) -> str:
    """Short hex prefix of a key fingerprint, safe for logs."""
    return fingerprint.hex()[:length]

def parse_seed(text: str) -> int:
    """
    Parse a hex seed of up to 64 digits (left-padded with zeros).

    Args:
        text: Hex string, with or without a 0x prefix

    Returns:
        The seed as a non-negative integer below 2**256
    """
    digits = text.strip().lower()
    if digits.startswith("0x"):
        digits = digits[2:]
    if not digits or len(digits) > SEED_HEX_DIGITS:
        raise InvalidParameterError(f"seed must be 1 to {SEED_HEX_DIGITS} hex digits, got {len(digits)}")
    try:
        return int(digits.rjust(SEED_HEX_DIGITS, "0"), 16)
    except ValueError as exc:
        raise InvalidParameterError(f"seed is not valid hex: {text!r}") from exc

def format_seed(seed: int) -> str:
    """Render a seed as 64 hex digits."""
    return f"{seed:0{SEED_HEX_DIGITS}x}"

def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < 2 ** SEED_BITS:
        raise InvalidParameterError(f"seed must be an integer in [0, 2**{SEED_BITS})")
    return int(seed)

def derive_seed(seed: int, *labels: Union[str, int]) -> int:
    """
    Derive an independent 256-bit seed from a parent seed and labels.

    Args:
        seed: Parent seed
        labels: Any mix of strings and integers naming the child stream

    Returns:
        SHA-256 of the parent seed bytes and the labels, as an integer
    """
    digest = hashlib.sha256(check_seed(seed).to_bytes(SEED_BITS // 8, "big"))
    for label in labels:
        digest.update(b"\x00")
        digest.update(str(label).encode("utf-8"))
    return int.from_bytes(digest.digest(), "big")

def max_abs_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """Largest absolute entrywise difference between two equally shaped arrays."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise InvalidInputError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))

def relative_l2(estimate: np.ndarray, reference: np.ndarray) -> float:
    """||estimate - reference|| / ||reference|| (inf when the reference is zero and they differ)."""
    estimate = np.asarray(estimate, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    if estimate.shape != reference.shape:
        raise InvalidInputError(f"shape mismatch: {estimate.shape} vs {reference.shape}")
    diff = float(np.linalg.norm(estimate - reference))
    norm = float(np.linalg.norm(reference))
    if norm == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / norm

def parse_int_list(text: str) -> list:
    """Parse '1,3,5' into [1, 3, 5]."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidParameterError(f"expected comma-separated integers, got {text!r}") from exc

def configure_logging(quiet: bool = False, verbose: bool = False, stream: Optional[object] = None) -> None:
    """Send log records to stderr; --quiet keeps warnings and errors only."""
    level = logging.WARNING if quiet else (logging.DEBUG if verbose else logging.INFO)
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_orthokey", False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler._orthokey = True
    root.addHandler(handler)
    root.setLevel(level)

