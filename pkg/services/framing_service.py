import logging

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from data.models.framed_signal import FramedSignal, FramingDescriptor, FramingMode, window_count
from data.models.waveform import Waveform
from errors import InvalidInputError, InvalidParameterError, UnsupportedConfigurationError
from services.preprocess_service import trim_overlap

logger = logging.getLogger(__name__)

def frame_plain(waveform: Waveform, block_size: int) -> FramedSignal:
    """
    Cut a waveform into consecutive non-overlapping blocks.

    The last block is zero-padded when T is not a multiple of M; the padding
    is recorded in the descriptor.

    Args:
        waveform: Input waveform (T >= 1)
        block_size: Block length M (>= 1)

    Returns:
        ceil(T / M) blocks
    """
    if block_size < 1:
        raise InvalidParameterError(f"block size must be >= 1, got {block_size}")
    length = waveform.length
    if length == 0:
        raise InvalidInputError("cannot frame an empty waveform")
    pad_count = (-length) % block_size
    padded = np.concatenate([waveform.samples, np.zeros(pad_count)])
    descriptor = FramingDescriptor(FramingMode.PLAIN, block_size, length, pad_count=pad_count)
    return FramedSignal(padded.reshape(-1, block_size), descriptor)

def frame_overlapping(waveform: Waveform, block_size: int, stride: int) -> FramedSignal:
    """
    Cut a waveform into the M-length windows a stride-S convolution reads.

    Block i is samples[S*i : S*i + M] for i < L = floor((T - M) / S) + 1;
    samples past the last full window are dropped.

    Args:
        waveform: Input waveform (T >= M)
        block_size: Window length M
        stride: Hop S with 1 <= S <= M

    Returns:
        L overlapping blocks; consecutive blocks share M - S samples
    """
    if block_size < 1 or stride < 1:
        raise InvalidParameterError(f"block size and stride must be >= 1, got M={block_size}, S={stride}")
    if stride > block_size:
        raise UnsupportedConfigurationError(f"stride {stride} exceeds block size {block_size}")
    length = waveform.length
    if length < block_size:
        raise InvalidInputError(f"waveform of {length} samples is shorter than one block of {block_size}")
    windows = sliding_window_view(waveform.samples, block_size)[::stride]
    descriptor = FramingDescriptor(FramingMode.OVERLAPPING, block_size, length, stride=stride)
    dropped = length - descriptor.covered_length
    if dropped:
        logger.debug("overlapping framing drops %d trailing samples", dropped)
    return FramedSignal(windows, descriptor)

def concat_frames(framed: FramedSignal) -> np.ndarray:
    """Blocks joined in order (length block_count * M)."""
    return framed.concat()

def reconstruct(framed: FramedSignal) -> np.ndarray:
    """
    Undo framing on decrypted blocks.

    Plain framing returns the first T samples; overlapping framing returns
    the window-covered prefix of length M + (L - 1) S.
    """
    if framed.descriptor.mode is FramingMode.PLAIN:
        return framed.concat()[:framed.descriptor.original_length]
    return trim_overlap(framed)

def overlapping_length(length: int, block_size: int, stride: int) -> int:
    """L_A = floor((T - M) / S + 1) * M, the concatenated length of overlapping framing."""
    return window_count(length, block_size, stride) * block_size
