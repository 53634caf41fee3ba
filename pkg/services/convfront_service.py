import logging
from typing import Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from data.models.conv_frontend import ConvFrontend, EquivalenceReport, FeatureSequence, FramingRecipe
from data.models.framed_signal import EncryptedSignal, FramedSignal
from data.models.keyset import SecretKeySet
from data.models.waveform import Waveform
from errors import (InvalidInputError, InvalidModeError, KeyMismatchError, NoOpError,
                    UnsupportedConfigurationError)
from services.cipher_service import encrypt
from utils import format_fingerprint, max_abs_deviation, relative_l2

logger = logging.getLogger(__name__)

def _require_plain(model: ConvFrontend) -> None:
    if model.is_encrypted:
        raise InvalidModeError("operation needs a plain front-end, got an encrypted one")

def conv_forward(model: ConvFrontend, waveform: Waveform) -> FeatureSequence:
    """
    Strided 1D convolution of a raw waveform.

    Frame i, channel c is sum_k kernels[c, k] * y[S*i + k] + bias[c], for
    i < L = floor((T - M) / S) + 1.

    Args:
        model: Plain front-end
        waveform: Input of at least M samples

    Returns:
        L x C features
    """
    _require_plain(model)
    size = model.kernel_size
    if waveform.length < size:
        raise InvalidInputError(f"waveform of {waveform.length} samples is shorter than the kernel ({size})")
    windows = sliding_window_view(waveform.samples, size)[::model.stride]
    return FeatureSequence(windows @ model.kernels.T + model.bias_or_zero)

def forward_framed(model: ConvFrontend, framed: FramedSignal) -> FeatureSequence:
    """Stride-M front-end applied block by block to already framed input."""
    _require_plain(model)
    if model.stride != model.kernel_size:
        raise UnsupportedConfigurationError(
            f"framed input needs a stride-M front-end, model has stride {model.stride} with M={model.kernel_size}")
    if framed.block_size != model.kernel_size:
        raise InvalidInputError(f"block size {framed.block_size} does not match kernel size {model.kernel_size}")
    return FeatureSequence(framed.blocks @ model.kernels.T + model.bias_or_zero)

def encrypt_model(model: ConvFrontend, keys: SecretKeySet) -> ConvFrontend:
    """
    Branch the first layer into N encrypted copies, one per key.

    Branch n, channel c holds K_n^T E^(c), stored as the row E^(c)T K_n. Bias
    passes through. The result runs with stride M on overlapping frames of hop
    S (the plain model's stride); the input model is left untouched.

    Args:
        model: Plain front-end with kernel size M
        keys: Key set with dim M

    Returns:
        Encrypted front-end with branches of shape (N, C, M)
    """
    _require_plain(model)
    if keys.dim != model.kernel_size:
        raise KeyMismatchError(f"key dimension {keys.dim} does not match kernel size {model.kernel_size}")
    branches = np.einsum("cm,nmk->nck", model.kernels, keys.matrices)
    fingerprint = keys.fingerprint()
    logger.info("encrypted front-end: %d channels, M=%d, N=%d branches, key %s", model.channels,
                model.kernel_size, keys.n_keys, format_fingerprint(fingerprint))
    return ConvFrontend(
        stride=model.kernel_size,
        branches=branches,
        bias=model.bias,
        frame_stride=model.recipe.stride,
        key_fingerprint=fingerprint
    )

def encrypted_forward(model: ConvFrontend, encrypted: EncryptedSignal) -> FeatureSequence:
    """
    Run an encrypted front-end on encrypted blocks.

    Block i goes to branch i mod N. With the key set used for encrypt_model
    the output equals the plain model's conv_forward on the original audio.
    """
    if not model.is_encrypted:
        raise InvalidModeError("encrypted_forward needs an encrypted front-end")
    if encrypted.n_keys_used != model.n_keys:
        raise KeyMismatchError(f"signal uses {encrypted.n_keys_used} keys, model has {model.n_keys} branches")
    if encrypted.block_size != model.kernel_size:
        raise KeyMismatchError(f"block size {encrypted.block_size} does not match kernel size {model.kernel_size}")
    if encrypted.descriptor.stride != model.recipe.stride:
        raise UnsupportedConfigurationError(
            f"signal framed with hop {encrypted.descriptor.stride}, model expects {model.recipe.stride}")
    n_keys = model.n_keys
    frames = np.empty((encrypted.block_count, model.channels))
    for n in range(min(n_keys, encrypted.block_count)):
        frames[n::n_keys] = encrypted.blocks[n::n_keys] @ model.branches[n].T
        logger.debug("branch %d: %d frames", n, frames[n::n_keys].shape[0])
    return FeatureSequence(frames + model.bias_or_zero)

def rewrite_stride(model: ConvFrontend) -> Tuple[ConvFrontend, FramingRecipe]:
    """
    Rewrite a stride-S (S < M) front-end as a stride-M one over overlapping frames.

    Returns:
        The stride-M front-end (same kernels and bias) and the (M, S) framing
        recipe its input must go through
    """
    _require_plain(model)
    if model.stride >= model.kernel_size:
        raise NoOpError(f"front-end already has stride {model.stride} = M")
    recipe = FramingRecipe(model.kernel_size, model.stride)
    rewritten = ConvFrontend(
        stride=model.kernel_size,
        kernels=model.kernels,
        bias=model.bias,
        frame_stride=model.stride
    )
    return rewritten, recipe

def verify_equivalence(plain: ConvFrontend, encrypted_model: ConvFrontend, keys: SecretKeySet,
                       waveform: Waveform, tol: float = 1e-9) -> EquivalenceReport:
    """
    Compare plain conv_forward with the encrypted pipeline on one waveform.

    The waveform is framed with the encrypted model's recipe, encrypted with
    keys and passed through encrypted_forward. A wrong key shows up as a large
    deviation, not an exception.
    """
    _require_plain(plain)
    if plain.kernel_size != encrypted_model.kernel_size or plain.channels != encrypted_model.channels:
        raise KeyMismatchError("plain and encrypted front-ends differ in shape")
    recipe = encrypted_model.recipe
    if recipe != plain.recipe:
        raise UnsupportedConfigurationError(
            f"encrypted model frames with hop {recipe.stride}, plain model with hop {plain.recipe.stride}")
    if plain.frame_stride is None:
        reference = conv_forward(plain, waveform).frames
    else:
        reference = forward_framed(plain, recipe.apply(waveform)).frames
    features = encrypted_forward(encrypted_model, encrypt(recipe.apply(waveform), keys)).frames
    report = EquivalenceReport(
        max_abs_deviation=max_abs_deviation(features, reference),
        relative_l2=relative_l2(features, reference),
        frames=reference.shape[0],
        tolerance=float(tol)
    )
    logger.info("equivalence over %d frames: max deviation %.3e (tol %.1e)", report.frames,
                report.max_abs_deviation, tol)
    return report
