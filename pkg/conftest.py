import numpy as np
import pytest

from data.models.simulation_config import KeysetConfig
from data.models.waveform import Waveform
from services.corpus_service import generate_corpus
from services.key_service import generate_keyset

SEED = 0x0123456789ABCDEF

def pytest_configure(config):
    config.addinivalue_line("markers", "slow: multi-seed benchmark runs")

@pytest.fixture
def rng():
    """Fixed-seed generator so randomized checks are reproducible."""
    return np.random.default_rng(20240601)

@pytest.fixture
def keys():
    return generate_keyset(3, 10, SEED)

@pytest.fixture
def waveform(rng):
    return Waveform(rng.standard_normal(1603), 16000)

@pytest.fixture(scope="session")
def small_corpus():
    """Four speakers, four utterances each: enough to split, quick to featurize."""
    return generate_corpus(n_speakers=4, utts_per_speaker=4, tokens_per_utt=3, seed=SEED, vocab_size=5)

@pytest.fixture
def keyset_config():
    return KeysetConfig(n_keys=3, dim=10, stride=5)
