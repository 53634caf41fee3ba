from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from data.models.framed_signal import FramedSignal
from data.models.waveform import Waveform
from errors import InvalidParameterError, UnsupportedConfigurationError

@dataclass(frozen=True)
class FramingRecipe:
    """Overlapping framing (M, S) the user side applies before encryption."""
    block_size: int
    stride: int

    def __post_init__(self):
        if self.block_size < 1 or self.stride < 1:
            raise InvalidParameterError("framing recipe needs block_size >= 1 and stride >= 1")
        if self.stride > self.block_size:
            raise UnsupportedConfigurationError(
                f"stride {self.stride} exceeds block size {self.block_size}")

    def apply(self, waveform: Waveform) -> FramedSignal:
        """Overlapping framing of a waveform with this recipe."""
        from services.framing_service import frame_overlapping
        return frame_overlapping(waveform, self.block_size, self.stride)

    def to_dict(self) -> Dict[str, Any]:
        return {"block_size": self.block_size, "stride": self.stride}

@dataclass(frozen=True, eq=False)
class ConvFrontend:
    """
    First 1D convolution layer of a speech model.

    Plain state holds C kernels of length M (shape (C, M)). Encrypted state holds
    N * C branched kernels (shape (N, C, M)); branch n, channel c is K_n^T E^(c)
    stored as a row, and the plain kernels are not retained. frame_stride is the
    hop of the overlapping framing the input must use (None for plain models fed
    raw waveforms).
    """
    stride: int
    kernels: Optional[np.ndarray] = None
    bias: Optional[np.ndarray] = None
    branches: Optional[np.ndarray] = None
    frame_stride: Optional[int] = None
    key_fingerprint: Optional[bytes] = None

    def __post_init__(self):
        if (self.kernels is None) == (self.branches is None):
            raise InvalidParameterError("a front-end holds either plain kernels or encrypted branches")
        if self.kernels is not None:
            kernels = np.array(self.kernels, dtype=np.float64, copy=True)
            if kernels.ndim == 1:
                kernels = kernels[np.newaxis]
            if kernels.ndim != 2 or min(kernels.shape) < 1:
                raise InvalidParameterError(f"kernels must have shape (C, M), got {kernels.shape}")
            kernels.setflags(write=False)
            object.__setattr__(self, "kernels", kernels)
            size, channels = kernels.shape[1], kernels.shape[0]
        else:
            branches = np.array(self.branches, dtype=np.float64, copy=True)
            if branches.ndim != 3 or min(branches.shape) < 1:
                raise InvalidParameterError(f"branches must have shape (N, C, M), got {branches.shape}")
            branches.setflags(write=False)
            object.__setattr__(self, "branches", branches)
            size, channels = branches.shape[2], branches.shape[1]
            if self.stride != size:
                raise InvalidParameterError("an encrypted front-end always runs with stride M")
        if not 1 <= self.stride <= size:
            raise UnsupportedConfigurationError(f"stride must be in [1, {size}], got {self.stride}")
        if self.frame_stride is not None and not 1 <= self.frame_stride <= size:
            raise UnsupportedConfigurationError(f"frame stride must be in [1, {size}], got {self.frame_stride}")
        if self.bias is not None:
            bias = np.array(self.bias, dtype=np.float64, copy=True).reshape(-1)
            if bias.shape[0] != channels:
                raise InvalidParameterError(f"bias has {bias.shape[0]} entries for {channels} channels")
            bias.setflags(write=False)
            object.__setattr__(self, "bias", bias)

    @property
    def is_encrypted(self) -> bool:
        return self.branches is not None

    @property
    def kernel_size(self) -> int:
        return self.branches.shape[2] if self.is_encrypted else self.kernels.shape[1]

    @property
    def channels(self) -> int:
        return self.branches.shape[1] if self.is_encrypted else self.kernels.shape[0]

    @property
    def n_keys(self) -> Optional[int]:
        return self.branches.shape[0] if self.is_encrypted else None

    @property
    def has_bias(self) -> bool:
        return self.bias is not None

    @property
    def bias_or_zero(self) -> np.ndarray:
        return self.bias if self.bias is not None else np.zeros(self.channels)

    @property
    def recipe(self) -> FramingRecipe:
        """Framing the input must go through before reaching this layer."""
        return FramingRecipe(self.kernel_size, self.frame_stride or self.stride)

    def summary(self) -> Dict[str, Any]:
        return {
            "state": "encrypted" if self.is_encrypted else "plain",
            "kernel_size": self.kernel_size,
            "stride": self.stride,
            "frame_stride": self.frame_stride,
            "channels": self.channels,
            "bias": self.has_bias,
            "n_keys": self.n_keys,
            "key_fingerprint": self.key_fingerprint.hex() if self.key_fingerprint else None
        }

@dataclass(frozen=True, eq=False)
class FeatureSequence:
    """Front-end output: L frames of C values."""
    frames: np.ndarray

    def __post_init__(self):
        frames = np.array(self.frames, dtype=np.float64, copy=True)
        if frames.ndim != 2:
            raise InvalidParameterError(f"frames must have shape (L, C), got {frames.shape}")
        frames.setflags(write=False)
        object.__setattr__(self, "frames", frames)

    @property
    def length(self) -> int:
        return self.frames.shape[0]

    @property
    def channels(self) -> int:
        return self.frames.shape[1]

@dataclass
class EquivalenceReport:
    """Encrypted pipeline output compared with the plain front-end on the same audio."""
    max_abs_deviation: float
    relative_l2: float
    frames: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_abs_deviation": self.max_abs_deviation,
            "relative_l2": self.relative_l2,
            "frames": self.frames,
            "tolerance": self.tolerance,
            "passed": self.passed
        }
