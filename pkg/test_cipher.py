import logging

import numpy as np
import pytest

from data.models.waveform import Waveform
from errors import KeyMismatchError
from services.cipher_service import decrypt, encrypt
from services.framing_service import frame_overlapping, frame_plain
from services.key_service import generate_keyset, identity_keyset
from utils import relative_l2

def _random_case(rng):
    dim = int(rng.integers(1, 17))
    n_keys = int(rng.integers(1, 9))
    waveform = Waveform(rng.standard_normal(int(rng.integers(dim, 400))))
    if rng.random() < 0.5:
        framed = frame_plain(waveform, dim)
    else:
        framed = frame_overlapping(waveform, dim, int(rng.integers(1, dim + 1)))
    keys = generate_keyset(n_keys, dim, int(rng.integers(0, 2 ** 62)))
    return framed, keys

def test_round_trip_restores_blocks(rng):
    for _ in range(200):
        framed, keys = _random_case(rng)
        restored = decrypt(encrypt(framed, keys), keys)
        np.testing.assert_allclose(restored.blocks, framed.blocks, rtol=0, atol=1e-12)
        assert restored.descriptor == framed.descriptor

def test_block_norms_are_preserved(rng):
    for _ in range(200):
        framed, keys = _random_case(rng)
        encrypted = encrypt(framed, keys)
        np.testing.assert_allclose(np.linalg.norm(encrypted.blocks, axis=1), np.linalg.norm(framed.blocks, axis=1),
                                   rtol=0, atol=1e-12)

def test_keys_are_applied_cyclically(waveform, keys):
    framed = frame_plain(waveform, keys.dim)
    encrypted = encrypt(framed, keys)
    assert encrypted.n_keys_used == keys.n_keys
    for i in range(framed.block_count):
        np.testing.assert_allclose(encrypted.blocks[i], framed.blocks[i] @ keys.matrices[i % keys.n_keys], atol=1e-14)

def test_single_key_encrypts_every_block_alike(waveform):
    keys = generate_keyset(1, 10, 7)
    framed = frame_plain(waveform, 10)
    np.testing.assert_allclose(encrypt(framed, keys).blocks, framed.blocks @ keys.matrices[0], atol=1e-14)

def test_identity_keys_change_nothing(waveform):
    framed = frame_overlapping(waveform, 10, 5)
    np.testing.assert_array_equal(encrypt(framed, identity_keyset(3, 10)).blocks, framed.blocks)

def test_dimension_mismatch_is_rejected(waveform, keys):
    framed = frame_plain(waveform, 8)
    with pytest.raises(KeyMismatchError):
        encrypt(framed, keys)
    encrypted = encrypt(frame_plain(waveform, 10), keys)
    with pytest.raises(KeyMismatchError):
        decrypt(encrypted, generate_keyset(3, 8, 1))

def test_key_count_mismatch_is_rejected(waveform, keys):
    encrypted = encrypt(frame_plain(waveform, 10), keys)
    with pytest.raises(KeyMismatchError):
        decrypt(encrypted, generate_keyset(2, 10, 1))

def test_wrong_key_yields_garbage_and_a_warning(waveform, keys, caplog):
    framed = frame_plain(waveform, 10)
    encrypted = encrypt(framed, keys)
    with caplog.at_level(logging.WARNING):
        garbage = decrypt(encrypted, generate_keyset(3, 10, 99))
    assert relative_l2(garbage.blocks, framed.blocks) > 0.1
    assert any("fingerprint" in record.message for record in caplog.records)
