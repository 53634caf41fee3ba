import numpy as np
import pytest

from data.models.conv_frontend import ConvFrontend, FramingRecipe
from data.models.framed_signal import EncryptedSignal
from data.models.waveform import Waveform
from errors import (InvalidInputError, InvalidModeError, KeyMismatchError, NoOpError,
                    UnsupportedConfigurationError)
from services.cipher_service import encrypt
from services.convfront_service import (conv_forward, encrypt_model, encrypted_forward, forward_framed,
                                        rewrite_stride, verify_equivalence)
from services.framing_service import frame_overlapping
from services.key_service import generate_keyset
from utils import max_abs_deviation, relative_l2

def _plain_model(rng, size, stride, channels, bias=True):
    return ConvFrontend(
        stride=stride,
        kernels=rng.standard_normal((channels, size)),
        bias=rng.standard_normal(channels) if bias else None
    )

def test_conv_forward_matches_direct_sum(rng):
    model = _plain_model(rng, 6, 4, 3)
    samples = rng.standard_normal(50)
    features = conv_forward(model, Waveform(samples)).frames
    assert features.shape == ((50 - 6) // 4 + 1, 3)
    for i in range(features.shape[0]):
        for c in range(3):
            expected = np.dot(model.kernels[c], samples[4 * i:4 * i + 6]) + model.bias[c]
            assert features[i, c] == pytest.approx(expected, abs=1e-12)

def test_conv_forward_rejects_short_input(rng):
    with pytest.raises(InvalidInputError):
        conv_forward(_plain_model(rng, 10, 5, 2), Waveform(np.ones(9)))

def test_correct_key_reproduces_plain_features(rng):
    """The encrypted pipeline equals the plain convolution for random shapes and keys."""
    for _ in range(200):
        size = int(rng.integers(2, 17))
        stride = int(rng.integers(1, size + 1))
        n_keys = int(rng.integers(1, 9))
        model = _plain_model(rng, size, stride, int(rng.integers(1, 9)), bias=bool(rng.random() < 0.5))
        waveform = Waveform(rng.standard_normal(int(rng.integers(size, 401))))
        keys = generate_keyset(n_keys, size, int(rng.integers(0, 2 ** 62)))
        encrypted_model = encrypt_model(model, keys)
        encrypted = encrypt(frame_overlapping(waveform, size, stride), keys)
        features = encrypted_forward(encrypted_model, encrypted).frames
        assert max_abs_deviation(features, conv_forward(model, waveform).frames) <= 1e-9

def test_wrong_key_diverges(rng):
    diverged = 0
    for _ in range(100):
        size = int(rng.integers(3, 17))
        stride = int(rng.integers(1, size + 1))
        n_keys = int(rng.integers(1, 9))
        model = _plain_model(rng, size, stride, int(rng.integers(1, 9)), bias=False)
        waveform = Waveform(rng.standard_normal(int(rng.integers(4 * size, 401))))
        keys = generate_keyset(n_keys, size, int(rng.integers(0, 2 ** 62)))
        wrong = generate_keyset(n_keys, size, int(rng.integers(0, 2 ** 62)))
        features = encrypted_forward(encrypt_model(model, keys),
                                     encrypt(frame_overlapping(waveform, size, stride), wrong)).frames
        if relative_l2(features, conv_forward(model, waveform).frames) >= 0.1:
            diverged += 1
    assert diverged >= 99

def test_encrypted_model_shape_and_bias(rng, keys):
    model = _plain_model(rng, 10, 5, 4)
    encrypted = encrypt_model(model, keys)
    assert encrypted.is_encrypted
    assert encrypted.branches.shape == (3, 4, 10)
    assert encrypted.stride == 10
    assert encrypted.frame_stride == 5
    assert encrypted.recipe == FramingRecipe(10, 5)
    np.testing.assert_array_equal(encrypted.bias, model.bias)
    assert encrypted.key_fingerprint == keys.fingerprint()
    np.testing.assert_allclose(encrypted.branches[1, 2], keys.matrices[1].T @ model.kernels[2], atol=1e-14)

def test_encrypt_model_rejects_bad_inputs(rng, keys):
    with pytest.raises(KeyMismatchError):
        encrypt_model(_plain_model(rng, 8, 4, 2), keys)
    encrypted = encrypt_model(_plain_model(rng, 10, 5, 2), keys)
    with pytest.raises(InvalidModeError):
        encrypt_model(encrypted, keys)

def test_encrypted_forward_checks_routing(rng, keys, waveform):
    encrypted_model = encrypt_model(_plain_model(rng, 10, 5, 2), keys)
    with pytest.raises(KeyMismatchError):
        encrypted_forward(encrypted_model, encrypt(frame_overlapping(waveform, 10, 5), generate_keyset(2, 10, 1)))
    with pytest.raises(UnsupportedConfigurationError):
        encrypted_forward(encrypted_model, encrypt(frame_overlapping(waveform, 10, 4), keys))
    with pytest.raises(InvalidModeError):
        encrypted_forward(_plain_model(rng, 10, 5, 2), encrypt(frame_overlapping(waveform, 10, 5), keys))

def test_stride_rewrite_is_exact(rng):
    shapes = [(10, 5)] + [(int(m), int(rng.integers(1, m))) for m in rng.integers(2, 33, 199)]
    for size, stride in shapes:
        model = _plain_model(rng, size, stride, int(rng.integers(1, 6)))
        waveform = Waveform(rng.standard_normal(int(rng.integers(size, 500))))
        rewritten, recipe = rewrite_stride(model)
        assert rewritten.stride == size
        assert recipe == FramingRecipe(size, stride)
        features = forward_framed(rewritten, recipe.apply(waveform)).frames
        assert max_abs_deviation(features, conv_forward(model, waveform).frames) <= 1e-12

def test_rewrite_of_canonical_model_is_a_no_op_error(rng):
    with pytest.raises(NoOpError):
        rewrite_stride(_plain_model(rng, 10, 10, 2))

def test_forward_framed_needs_stride_m(rng, waveform):
    with pytest.raises(UnsupportedConfigurationError):
        forward_framed(_plain_model(rng, 10, 5, 2), frame_overlapping(waveform, 10, 5))

def test_verify_equivalence_reports_both_keys(rng, keys, waveform):
    plain = _plain_model(rng, 10, 5, 4)
    encrypted_model = encrypt_model(plain, keys)
    correct = verify_equivalence(plain, encrypted_model, keys, waveform)
    assert correct.passed
    assert correct.frames == (waveform.length - 10) // 5 + 1
    wrong = verify_equivalence(plain, encrypted_model, generate_keyset(3, 10, 42), waveform)
    assert not wrong.passed
    assert wrong.relative_l2 > 0.1

def test_verify_equivalence_on_rewritten_model(rng, keys, waveform):
    rewritten, _ = rewrite_stride(_plain_model(rng, 10, 5, 3))
    report = verify_equivalence(rewritten, encrypt_model(rewritten, keys), keys, waveform)
    assert report.passed

@pytest.mark.parametrize("factor", [-2.5, 0.0, 0.3, 7.0])
def test_encrypted_forward_is_linear_in_the_signal(rng, keys, waveform, factor):
    model = encrypt_model(_plain_model(rng, 10, 5, 4), keys)
    encrypted = encrypt(frame_overlapping(waveform, 10, 5), keys)
    features = encrypted_forward(model, encrypted).frames
    scaled = encrypted_forward(model, encrypted.scaled(factor)).frames
    np.testing.assert_allclose(scaled, factor * (features - model.bias) + model.bias, atol=1e-9)

def test_silence_gives_bias_only_frames(rng, keys):
    model = encrypt_model(_plain_model(rng, 10, 5, 4), keys)
    encrypted = encrypt(frame_overlapping(Waveform(np.zeros(200)), 10, 5), keys)
    features = encrypted_forward(model, encrypted).frames
    assert features.shape == (39, 4)
    np.testing.assert_array_equal(features, np.tile(model.bias, (39, 1)))

@pytest.mark.parametrize("branch", [0, 1, 2])
def test_blocks_are_routed_by_index_modulo_n(rng, keys, waveform, branch):
    plain = _plain_model(rng, 10, 5, 4)
    model = encrypt_model(plain, keys)
    encrypted = encrypt(frame_overlapping(waveform, 10, 5), keys)
    routed = np.arange(encrypted.block_count) % keys.n_keys == branch
    masked = EncryptedSignal(np.where(routed[:, np.newaxis], encrypted.blocks, 0.0), encrypted.descriptor,
                             encrypted.n_keys_used, encrypted.key_fingerprint)
    features = encrypted_forward(model, masked).frames
    np.testing.assert_array_equal(features[~routed], np.tile(plain.bias, (int((~routed).sum()), 1)))
    expected = conv_forward(plain, waveform).frames
    assert max_abs_deviation(features[routed], expected[routed]) <= 1e-9
