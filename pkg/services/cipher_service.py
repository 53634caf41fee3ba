import logging

import numpy as np

from data.models.framed_signal import EncryptedSignal, FramedSignal
from data.models.keyset import SecretKeySet
from errors import KeyMismatchError
from utils import format_fingerprint

logger = logging.getLogger(__name__)

def _apply_cyclic(blocks: np.ndarray, matrices: np.ndarray) -> np.ndarray:
    """Row block i times matrices[i % N]; blocks sharing a key go through one product."""
    n_keys = matrices.shape[0]
    result = np.empty_like(blocks)
    for n in range(min(n_keys, blocks.shape[0])):
        result[n::n_keys] = blocks[n::n_keys] @ matrices[n]
    return result

def encrypt(framed: FramedSignal, keys: SecretKeySet) -> EncryptedSignal:
    """
    Multiply block i (0-based) by K_{i mod N}, blocks as row vectors on the left.

    Works on plain and overlapping framing alike; order and descriptor are kept.

    Args:
        framed: Blocks of length M
        keys: Key set with dim M

    Returns:
        The encrypted blocks with the key count and fingerprint
    """
    if framed.block_size != keys.dim:
        raise KeyMismatchError(f"block size {framed.block_size} does not match key dimension {keys.dim}")
    fingerprint = keys.fingerprint()
    encrypted = _apply_cyclic(framed.blocks, keys.matrices)
    logger.debug("encrypted %d blocks with N=%d key set %s", framed.block_count, keys.n_keys,
                 format_fingerprint(fingerprint))
    return EncryptedSignal(encrypted, framed.descriptor, keys.n_keys, fingerprint)

def decrypt(encrypted: EncryptedSignal, keys: SecretKeySet) -> FramedSignal:
    """
    Multiply block i by K_{i mod N}^T.

    The key set must have the same matrices in the same order as at
    encryption; a different key set silently yields garbage, which is the point.
    """
    if encrypted.block_size != keys.dim:
        raise KeyMismatchError(f"block size {encrypted.block_size} does not match key dimension {keys.dim}")
    if encrypted.n_keys_used != keys.n_keys:
        raise KeyMismatchError(f"signal was encrypted with {encrypted.n_keys_used} keys, key set has {keys.n_keys}")
    if encrypted.key_fingerprint != keys.fingerprint():
        logger.warning("key fingerprint differs from the one recorded at encryption")
    decrypted = _apply_cyclic(encrypted.blocks, np.swapaxes(keys.matrices, 1, 2))
    return FramedSignal(decrypted, encrypted.descriptor)
