"""
Encrypted-audio container.

Layout (little-endian): magic b"OKEA", version u16 = 1, mode u8 (0 plain,
1 overlapping), M u32, S u32, T u64, pad_count u32, n_keys u32, key
fingerprint (32 bytes), block_count u64, then block_count * M float64 samples.
"""
import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np

from data.models.framed_signal import EncryptedSignal, FramingDescriptor, FramingMode
from errors import FileFormatError, OrthoKeyError

logger = logging.getLogger(__name__)

MAGIC = b"OKEA"
VERSION = 1
HEADER = struct.Struct("<4sHBIIQII32sQ")

def encode_container(signal: EncryptedSignal) -> bytes:
    descriptor = signal.descriptor
    header = HEADER.pack(
        MAGIC, VERSION, descriptor.mode.code, descriptor.block_size, descriptor.stride,
        descriptor.original_length, descriptor.pad_count, signal.n_keys_used, signal.key_fingerprint,
        signal.block_count
    )
    return header + signal.blocks.astype("<f8").tobytes()

def decode_container(data: bytes) -> EncryptedSignal:
    """Parse container bytes; every structural problem is a FileFormatError."""
    if len(data) < HEADER.size:
        raise FileFormatError(f"container truncated: {len(data)} bytes")
    (magic, version, mode_code, block_size, stride, length, pad_count, n_keys, fingerprint,
     block_count) = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FileFormatError(f"bad container magic {magic!r}")
    if version != VERSION:
        raise FileFormatError(f"unsupported container version {version}")
    try:
        mode = FramingMode.from_code(mode_code)
        descriptor = FramingDescriptor(
            mode, block_size, length,
            stride=stride if mode is FramingMode.OVERLAPPING else None,
            pad_count=pad_count
        )
    except OrthoKeyError as exc:
        raise FileFormatError(f"inconsistent container header: {exc}") from exc
    if mode is FramingMode.PLAIN and stride != block_size:
        raise FileFormatError(f"plain container records stride {stride} for block size {block_size}")
    if block_count != descriptor.expected_block_count:
        raise FileFormatError(
            f"container holds {block_count} blocks, header implies {descriptor.expected_block_count}")
    if n_keys < 1:
        raise FileFormatError("container records zero keys")
    expected = HEADER.size + block_count * block_size * 8
    if len(data) != expected:
        raise FileFormatError(f"container has {len(data)} bytes, header implies {expected}")
    values = np.frombuffer(data, dtype="<f8", offset=HEADER.size).astype(np.float64)
    return EncryptedSignal(values.reshape(block_count, block_size), descriptor, n_keys, fingerprint)

def write_container(signal: EncryptedSignal, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_bytes(encode_container(signal))
    logger.info("wrote %d encrypted blocks (M=%d) to %s", signal.block_count, signal.block_size, path)
    return path

def read_container(path: Union[str, Path]) -> EncryptedSignal:
    return decode_container(Path(path).read_bytes())
