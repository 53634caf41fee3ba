"""
Front-end model file: UTF-8 text, one "key = value" per line, '#' comments.

Scalar keys: format, version, state (plain | encrypted), kernel_size, stride,
channels, bias (true | false), frame_stride (optional), n_keys and
key_fingerprint (encrypted only). Weights follow as row-major lines of
decimal values with 17 significant digits: "kernel.<c>" for plain models,
"branch.<n>.<c>" for encrypted ones, and "bias_values" when bias is true.
"""
import logging
from pathlib import Path
from typing import Dict, List, Union

import numpy as np

from data.models.conv_frontend import ConvFrontend
from errors import FileFormatError, OrthoKeyError

logger = logging.getLogger(__name__)

FORMAT_NAME = "orthokey-frontend"
VERSION = 1

def _row(values: np.ndarray) -> str:
    return " ".join(format(float(v), ".17g") for v in values)

def encode_model(model: ConvFrontend) -> str:
    lines = [
        f"format = {FORMAT_NAME}",
        f"version = {VERSION}",
        f"state = {'encrypted' if model.is_encrypted else 'plain'}",
        f"kernel_size = {model.kernel_size}",
        f"stride = {model.stride}",
        f"channels = {model.channels}",
        f"bias = {'true' if model.has_bias else 'false'}",
    ]
    if model.frame_stride is not None:
        lines.append(f"frame_stride = {model.frame_stride}")
    if model.is_encrypted:
        lines.append(f"n_keys = {model.n_keys}")
        lines.append(f"key_fingerprint = {(model.key_fingerprint or bytes(32)).hex()}")
        for n in range(model.n_keys):
            for c in range(model.channels):
                lines.append(f"branch.{n}.{c} = {_row(model.branches[n, c])}")
    else:
        for c in range(model.channels):
            lines.append(f"kernel.{c} = {_row(model.kernels[c])}")
    if model.has_bias:
        lines.append(f"bias_values = {_row(model.bias)}")
    return "\n".join(lines) + "\n"

def _parse_pairs(text: str) -> Dict[str, str]:
    pairs: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FileFormatError(f"model file line {number}: expected 'key = value'")
        key = key.strip()
        if key in pairs:
            raise FileFormatError(f"model file line {number}: duplicate key {key!r}")
        pairs[key] = value.strip()
    return pairs

def _int(pairs: Dict[str, str], key: str) -> int:
    if key not in pairs:
        raise FileFormatError(f"model file lacks {key!r}")
    try:
        return int(pairs[key])
    except ValueError as exc:
        raise FileFormatError(f"model file {key!r} is not an integer: {pairs[key]!r}") from exc

def _values(pairs: Dict[str, str], key: str, size: int) -> List[float]:
    if key not in pairs:
        raise FileFormatError(f"model file lacks {key!r}")
    try:
        values = [float(v) for v in pairs[key].split()]
    except ValueError as exc:
        raise FileFormatError(f"model file {key!r} holds a non-numeric value") from exc
    if len(values) != size:
        raise FileFormatError(f"model file {key!r} has {len(values)} values, expected {size}")
    if not np.all(np.isfinite(values)):
        raise FileFormatError(f"model file {key!r} holds non-finite values")
    return values

def decode_model(text: str) -> ConvFrontend:
    pairs = _parse_pairs(text)
    if pairs.get("format") != FORMAT_NAME:
        raise FileFormatError(f"not a front-end model file (format {pairs.get('format')!r})")
    if _int(pairs, "version") != VERSION:
        raise FileFormatError(f"unsupported model file version {pairs['version']}")
    state = pairs.get("state")
    if state not in ("plain", "encrypted"):
        raise FileFormatError(f"unknown model state {state!r}")
    size = _int(pairs, "kernel_size")
    channels = _int(pairs, "channels")
    if size < 1 or channels < 1:
        raise FileFormatError("kernel_size and channels must be >= 1")
    has_bias = pairs.get("bias", "false").lower()
    if has_bias not in ("true", "false"):
        raise FileFormatError(f"bias flag must be true or false, got {has_bias!r}")
    bias = _values(pairs, "bias_values", channels) if has_bias == "true" else None
    frame_stride = _int(pairs, "frame_stride") if "frame_stride" in pairs else None

    try:
        if state == "plain":
            kernels = np.array([_values(pairs, f"kernel.{c}", size) for c in range(channels)])
            return ConvFrontend(stride=_int(pairs, "stride"), kernels=kernels, bias=bias, frame_stride=frame_stride)
        n_keys = _int(pairs, "n_keys")
        if n_keys < 1:
            raise FileFormatError("n_keys must be >= 1")
        try:
            fingerprint = bytes.fromhex(pairs.get("key_fingerprint", ""))
        except ValueError as exc:
            raise FileFormatError("key_fingerprint is not hex") from exc
        if len(fingerprint) != 32:
            raise FileFormatError("key_fingerprint must be 32 bytes")
        branches = np.array([
            [_values(pairs, f"branch.{n}.{c}", size) for c in range(channels)] for n in range(n_keys)
        ])
        return ConvFrontend(stride=_int(pairs, "stride"), branches=branches, bias=bias,
                            frame_stride=frame_stride, key_fingerprint=fingerprint)
    except FileFormatError:
        raise
    except OrthoKeyError as exc:
        raise FileFormatError(f"inconsistent model file: {exc}") from exc

def write_model(model: ConvFrontend, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(encode_model(model), encoding="utf-8")
    logger.info("wrote %s front-end (C=%d, M=%d) to %s",
                "encrypted" if model.is_encrypted else "plain", model.channels, model.kernel_size, path)
    return path

def read_model(path: Union[str, Path]) -> ConvFrontend:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise FileFormatError(f"{path} is not a UTF-8 model file") from exc
    return decode_model(text)
