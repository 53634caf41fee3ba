from dataclasses import dataclass

import numpy as np

from errors import InvalidInputError

DEFAULT_SAMPLE_RATE = 16000

@dataclass(frozen=True, eq=False)
class Waveform:
    """Mono sample sequence with its sample rate."""
    samples: np.ndarray
    sample_rate: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64, copy=True).reshape(-1)
        if int(self.sample_rate) <= 0:
            raise InvalidInputError(f"sample_rate must be positive, got {self.sample_rate}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    @property
    def length(self) -> int:
        return self.samples.shape[0]

    def with_samples(self, samples: np.ndarray) -> 'Waveform':
        """Same sample rate, new samples."""
        return Waveform(samples=samples, sample_rate=self.sample_rate)
