"""
Binary key file.

Layout (little-endian): magic b"OKSK", version u16 = 1, n_keys u32, dim u32,
n_keys * dim * dim float64 entries (row-major, K_1..K_N), then CRC32 u32 over
every preceding byte.
"""
import logging
import struct
import zlib
from pathlib import Path
from typing import Union

import numpy as np

from data.models.keyset import SecretKeySet
from errors import FileFormatError

logger = logging.getLogger(__name__)

MAGIC = b"OKSK"
VERSION = 1
HEADER = struct.Struct("<4sHII")
CRC = struct.Struct("<I")

def encode_key_file(keys: SecretKeySet) -> bytes:
    body = HEADER.pack(MAGIC, VERSION, keys.n_keys, keys.dim) + keys.payload_bytes()
    return body + CRC.pack(zlib.crc32(body) & 0xFFFFFFFF)

def decode_key_file(data: bytes) -> SecretKeySet:
    """Parse key file bytes; raises FileFormatError on any structural problem."""
    if len(data) < HEADER.size + CRC.size:
        raise FileFormatError(f"key file truncated: {len(data)} bytes")
    magic, version, n_keys, dim = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FileFormatError(f"bad key file magic {magic!r}")
    if version != VERSION:
        raise FileFormatError(f"unsupported key file version {version}")
    if n_keys < 1 or dim < 1:
        raise FileFormatError(f"invalid key shape n_keys={n_keys} dim={dim}")
    expected = HEADER.size + n_keys * dim * dim * 8 + CRC.size
    if len(data) != expected:
        raise FileFormatError(f"key file has {len(data)} bytes, shape implies {expected}")
    body = data[:-CRC.size]
    (stored_crc,) = CRC.unpack_from(data, len(body))
    if zlib.crc32(body) & 0xFFFFFFFF != stored_crc:
        raise FileFormatError("key file CRC mismatch")
    values = np.frombuffer(body, dtype="<f8", offset=HEADER.size)
    if not np.all(np.isfinite(values)):
        raise FileFormatError("key file holds non-finite values")
    return SecretKeySet(values.astype(np.float64).reshape(n_keys, dim, dim))

def write_key_file(keys: SecretKeySet, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_bytes(encode_key_file(keys))
    logger.info("wrote key set N=%d M=%d to %s", keys.n_keys, keys.dim, path)
    return path

def read_key_file(path: Union[str, Path]) -> SecretKeySet:
    """Parse a key file without checking orthogonality."""
    return decode_key_file(Path(path).read_bytes())
