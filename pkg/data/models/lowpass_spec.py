from dataclasses import dataclass, asdict
from typing import Any, Dict

from errors import InvalidParameterError

@dataclass(frozen=True)
class LowPassSpec:
    """Windowed-sinc FIR low-pass design parameters (odd tap count, so a centre tap exists)."""
    sample_rate: int = 16000
    cutoff_hz: float = 4000.0
    taps: int = 101

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise InvalidParameterError(f"sample rate must be positive, got {self.sample_rate}")
        if self.taps < 1 or self.taps % 2 == 0:
            raise InvalidParameterError(f"taps must be a positive odd number, got {self.taps}")
        if not 0 < self.cutoff_hz < self.nyquist:
            raise InvalidParameterError(
                f"cutoff {self.cutoff_hz} Hz must lie in (0, {self.nyquist}) Hz")

    @property
    def nyquist(self) -> float:
        return self.sample_rate / 2.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
