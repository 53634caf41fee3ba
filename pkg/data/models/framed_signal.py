from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from errors import InvalidParameterError, UnsupportedConfigurationError

class FramingMode(Enum):
    """Plain contiguous blocks, or overlapping conv-aligned windows."""
    PLAIN = "plain"
    OVERLAPPING = "overlapping"

    @property
    def code(self) -> int:
        """Container byte: 0 plain, 1 overlapping."""
        return 0 if self is FramingMode.PLAIN else 1

    @classmethod
    def from_code(cls, code: int) -> 'FramingMode':
        if code == 0:
            return cls.PLAIN
        if code == 1:
            return cls.OVERLAPPING
        raise InvalidParameterError(f"unknown framing mode code {code}")

def window_count(length: int, block_size: int, stride: int) -> int:
    """Number of full windows, floor((T - M) / S) + 1, or 0 when T < M."""
    if length < block_size:
        return 0
    return (length - block_size) // stride + 1

@dataclass(frozen=True)
class FramingDescriptor:
    """
    How a waveform was cut into blocks.

    Plain mode records the zero padding of the last block; overlapping mode
    records the hop S (1 <= S <= M). The stride of a plain descriptor equals M.
    """
    mode: FramingMode
    block_size: int
    original_length: int
    stride: Optional[int] = None
    pad_count: int = 0

    def __post_init__(self):
        if self.block_size < 1:
            raise InvalidParameterError(f"block size must be >= 1, got {self.block_size}")
        if self.original_length < 0:
            raise InvalidParameterError("original length must be non-negative")
        if self.mode is FramingMode.OVERLAPPING:
            if self.stride is None or self.stride < 1:
                raise InvalidParameterError("overlapping framing needs a stride >= 1")
            if self.stride > self.block_size:
                raise UnsupportedConfigurationError(
                    f"stride {self.stride} exceeds block size {self.block_size}")
            if self.pad_count != 0:
                raise InvalidParameterError("overlapping framing never pads")
        else:
            if self.stride not in (None, self.block_size):
                raise InvalidParameterError("plain framing has stride equal to the block size")
            object.__setattr__(self, "stride", self.block_size)
            if not 0 <= self.pad_count < self.block_size:
                raise InvalidParameterError(f"pad_count must be in [0, {self.block_size}), got {self.pad_count}")

    @property
    def expected_block_count(self) -> int:
        """t = ceil(T / M) for plain, L = floor((T - M) / S) + 1 for overlapping."""
        if self.mode is FramingMode.PLAIN:
            return -(-self.original_length // self.block_size)
        return window_count(self.original_length, self.block_size, self.stride)

    @property
    def covered_length(self) -> int:
        """Samples of the original reachable from the blocks: T for plain, M + (L - 1) S for overlapping."""
        if self.mode is FramingMode.PLAIN:
            return self.original_length
        count = self.expected_block_count
        return 0 if count == 0 else self.block_size + (count - 1) * self.stride

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode.value,
            "block_size": self.block_size,
            "stride": self.stride,
            "original_length": self.original_length,
            "pad_count": self.pad_count
        }

def _check_blocks(blocks: np.ndarray, descriptor: FramingDescriptor) -> np.ndarray:
    blocks = np.array(blocks, dtype=np.float64, copy=True)
    if blocks.size == 0:
        blocks = blocks.reshape(0, descriptor.block_size)
    if blocks.ndim != 2 or blocks.shape[1] != descriptor.block_size:
        raise InvalidParameterError(
            f"blocks must have shape (count, {descriptor.block_size}), got {blocks.shape}")
    blocks.setflags(write=False)
    return blocks

@dataclass(frozen=True, eq=False)
class FramedSignal:
    """Ordered length-M blocks (X_i in plain mode, A_i in overlapping mode)."""
    blocks: np.ndarray
    descriptor: FramingDescriptor

    def __post_init__(self):
        object.__setattr__(self, "blocks", _check_blocks(self.blocks, self.descriptor))

    @property
    def block_count(self) -> int:
        return self.blocks.shape[0]

    @property
    def block_size(self) -> int:
        return self.descriptor.block_size

    def concat(self) -> np.ndarray:
        """Blocks joined in order; length block_count * M."""
        return self.blocks.reshape(-1).copy()

@dataclass(frozen=True, eq=False)
class EncryptedSignal:
    """
    Encrypted blocks plus what is needed to route and audit them.

    key_fingerprint is a SHA-256 of the key payload; it identifies the key set
    for audit and carries nothing usable for decryption.
    """
    blocks: np.ndarray
    descriptor: FramingDescriptor
    n_keys_used: int
    key_fingerprint: bytes = b"\x00" * 32

    def __post_init__(self):
        object.__setattr__(self, "blocks", _check_blocks(self.blocks, self.descriptor))
        if self.n_keys_used < 1:
            raise InvalidParameterError("n_keys_used must be >= 1")
        if len(self.key_fingerprint) != 32:
            raise InvalidParameterError("key fingerprint must be 32 bytes")

    @property
    def block_count(self) -> int:
        return self.blocks.shape[0]

    @property
    def block_size(self) -> int:
        return self.descriptor.block_size

    def concat(self) -> np.ndarray:
        return self.blocks.reshape(-1).copy()

    def scaled(self, factor: float) -> 'EncryptedSignal':
        """Same routing metadata, blocks multiplied by a scalar."""
        return EncryptedSignal(self.blocks * factor, self.descriptor, self.n_keys_used, self.key_fingerprint)
