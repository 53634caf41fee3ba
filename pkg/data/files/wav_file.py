"""
Mono 16-bit PCM WAV I/O on top of scipy.io.wavfile.

Samples are scaled to [-1, 1) by 32768 on read. On write they are re-quantized
and clamped to the int16 range; any other sample type is a format error.
"""
import logging
from pathlib import Path
from typing import Union

import numpy as np
from scipy.io import wavfile

from data.models.waveform import Waveform
from errors import FileFormatError

logger = logging.getLogger(__name__)

FULL_SCALE = 32768.0

def read_wav(path: Union[str, Path]) -> Waveform:
    try:
        sample_rate, data = wavfile.read(str(path))
    except ValueError as exc:
        raise FileFormatError(f"{path} is not a readable WAV file: {exc}") from exc
    if data.ndim != 1:
        raise FileFormatError(f"{path} has {data.shape[1]} channels; only mono is supported")
    if data.dtype != np.int16:
        raise FileFormatError(f"{path} holds {data.dtype} samples; only 16-bit PCM is supported")
    samples = data.astype(np.float64) / FULL_SCALE
    logger.debug("read %d samples at %d Hz from %s", samples.size, sample_rate, path)
    return Waveform(samples, sample_rate)

def write_wav(waveform: Waveform, path: Union[str, Path]) -> Path:
    path = Path(path)
    scaled = np.round(waveform.samples * FULL_SCALE)
    clipped = int(np.count_nonzero((scaled < -32768) | (scaled > 32767)))
    if clipped:
        logger.warning("%d samples clipped writing 16-bit PCM to %s", clipped, path)
    wavfile.write(str(path), waveform.sample_rate, np.clip(scaled, -32768, 32767).astype(np.int16))
    logger.info("wrote %d samples to %s", waveform.length, path)
    return path
