"""
Adversary-side preprocessing: overlap trimming and low-pass filtering.
"""
import logging
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy import signal

from data.models.framed_signal import EncryptedSignal, FramedSignal, FramingMode
from data.models.lowpass_spec import LowPassSpec
from data.models.waveform import Waveform
from errors import InvalidModeError

logger = logging.getLogger(__name__)

def trim_overlap(frames: Union[FramedSignal, EncryptedSignal]) -> np.ndarray:
    """
    Drop the M - S samples each block shares with its predecessor.

    Output is block 0 followed by the last S samples of every later block,
    length M + (L - 1) S. On encrypted blocks this restores the time scale,
    not the content.

    Args:
        frames: Blocks with an overlapping descriptor

    Returns:
        The trimmed sample sequence
    """
    descriptor = frames.descriptor
    if descriptor.mode is not FramingMode.OVERLAPPING:
        raise InvalidModeError("overlap trimming needs overlapping framing")
    blocks = frames.blocks
    if blocks.shape[0] == 0:
        return np.zeros(0)
    tail = blocks[1:, descriptor.block_size - descriptor.stride:]
    return np.concatenate([blocks[0], tail.reshape(-1)])

@lru_cache(maxsize=16)
def _design(sample_rate: int, cutoff_hz: float, taps: int) -> np.ndarray:
    coefficients = signal.firwin(taps, cutoff_hz, window="hamming", fs=sample_rate)
    coefficients.setflags(write=False)
    return coefficients

def lowpass_coefficients(spec: LowPassSpec) -> np.ndarray:
    """Hamming-windowed sinc, unit DC gain."""
    return _design(spec.sample_rate, float(spec.cutoff_hz), spec.taps)

def lowpass(waveform: Waveform, spec: Optional[LowPassSpec] = None) -> Waveform:
    """
    Linear-phase FIR low-pass with the centre-tap delay removed.

    The signal is zero-padded at both ends, so output length equals input
    length and edge samples within taps // 2 of a boundary see a partial
    filter.

    Args:
        waveform: Input waveform
        spec: Filter design; defaults to 4 kHz / 101 taps at the waveform's rate

    Returns:
        Filtered waveform of the same length and rate
    """
    spec = spec or LowPassSpec(sample_rate=waveform.sample_rate)
    if spec.sample_rate != waveform.sample_rate:
        spec = LowPassSpec(sample_rate=waveform.sample_rate, cutoff_hz=spec.cutoff_hz, taps=spec.taps)
    if waveform.length == 0:
        return waveform
    coefficients = lowpass_coefficients(spec)
    delay = (spec.taps - 1) // 2
    filtered = np.convolve(waveform.samples, coefficients, mode="full")[delay:delay + waveform.length]
    logger.debug("low-pass %.0f Hz, %d taps on %d samples", spec.cutoff_hz, spec.taps, waveform.length)
    return waveform.with_samples(filtered)
