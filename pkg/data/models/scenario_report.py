from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from utils import format_seed

@dataclass
class ScenarioReport:
    """
    Metrics of one attack run.

    scenario is 1 (ignorant attacker) or 2 (semi-informed attacker);
    encryption is "victim" for a real key set, "identity" when the key set is
    all identity matrices and "none" for the unencrypted baseline.
    """
    scenario: int
    n_keys: int
    dim: int
    stride: int
    wer_percent: float
    eer_percent: float
    seed: int
    lpf: bool = False
    encryption: str = "victim"
    queries: int = 0
    trials: int = 0
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_baseline(self) -> bool:
        return self.encryption == "none"

    @property
    def key(self) -> Tuple[str, int, str, bool, int]:
        """Merge key: (seed, scenario, encryption, lpf, N)."""
        return (format_seed(self.seed), self.scenario, self.encryption, self.lpf, self.n_keys)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario,
            "n_keys": self.n_keys,
            "dim": self.dim,
            "stride": self.stride,
            "lpf": self.lpf,
            "encryption": self.encryption,
            "wer_percent": self.wer_percent,
            "eer_percent": self.eer_percent,
            "queries": self.queries,
            "trials": self.trials,
            "seed": format_seed(self.seed),
            "config": dict(self.config)
        }

@dataclass
class KeyCorrectnessReport:
    """Encrypted front-end features against plain features, with the victim key and with a wrong key."""
    n_keys: int
    dim: int
    stride: int
    channels: int
    utterances: int
    correct_max_deviation: float
    correct_relative_l2: float
    incorrect_max_deviation: float
    incorrect_relative_l2: float
    seed: int
    incorrect_min_relative_l2: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_keys": self.n_keys,
            "dim": self.dim,
            "stride": self.stride,
            "channels": self.channels,
            "utterances": self.utterances,
            "correct_key": {
                "max_abs_deviation": self.correct_max_deviation,
                "relative_l2": self.correct_relative_l2
            },
            "incorrect_key": {
                "max_abs_deviation": self.incorrect_max_deviation,
                "relative_l2": self.incorrect_relative_l2,
                "min_relative_l2": self.incorrect_min_relative_l2
            },
            "seed": format_seed(self.seed)
        }
