import json
import logging
from argparse import Namespace
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from data.models.lowpass_spec import LowPassSpec
from data.models.simulation_config import CorpusConfig, KeysetConfig
from errors import FileFormatError, InvalidParameterError
from utils import format_seed, parse_int_list, parse_seed

logger = logging.getLogger(__name__)

PATH_FLAGS = (
    "key", "input", "out", "model", "model_in", "model_out", "wav", "encrypted_model",
    "ref", "hyp", "scores", "config", "out_csv"
)

def _load_config_file(path: Path) -> Dict[str, Any]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FileFormatError(f"config file {path} must hold a JSON object")
    return data

@dataclass
class RunConfig:
    """
    The validated flag set of one CLI invocation.

    Paths are resolved to absolute paths up front. Values from a --config
    file fill in whatever the command line left unset.
    """
    command: str
    paths: Dict[str, Path] = field(default_factory=dict)
    n_keys: Optional[int] = None
    dim: Optional[int] = None
    stride: Optional[int] = None
    mode: Optional[str] = None
    seed: Optional[int] = None
    seeds: List[int] = field(default_factory=list)
    n_keys_grid: List[int] = field(default_factory=list)
    tolerance: Optional[float] = None
    cutoff_hz: Optional[float] = None
    taps: Optional[int] = None
    sample_rate: int = 16000
    scenario: Optional[int] = None
    lpf: bool = False
    trim: bool = False
    identity: bool = False
    baseline: bool = False
    key_correctness: bool = False
    metric: Optional[str] = None
    workers: int = 1
    corpus: CorpusConfig = field(default_factory=CorpusConfig)

    @classmethod
    def from_namespace(cls, args: Namespace) -> 'RunConfig':
        """Validate parsed arguments; raises InvalidParameterError on inconsistent flags."""
        def arg(name: str, default: Any = None) -> Any:
            value = getattr(args, name, None)
            return default if value is None else value

        paths = {name: Path(arg(name)).expanduser().resolve() for name in PATH_FLAGS if arg(name) is not None}
        file_values = _load_config_file(paths["config"]) if "config" in paths else {}
        keyset_defaults = KeysetConfig.from_dict(file_values.get("keyset", file_values))
        corpus_values = CorpusConfig.from_dict(file_values.get("corpus", file_values)).to_dict()
        for name in corpus_values:
            if arg(name) is not None:
                corpus_values[name] = int(arg(name))

        command = args.command
        mode = arg("mode")
        stride = arg("stride")
        if command == "encrypt":
            mode = mode or "plain"
            if mode == "overlapping" and stride is None:
                raise InvalidParameterError("--stride is required with --mode overlapping")
            if mode == "plain" and stride is not None:
                raise InvalidParameterError("--stride only applies to --mode overlapping")
        elif command in ("simulate", "benchmark"):
            stride = stride if stride is not None else keyset_defaults.stride

        seed = parse_seed(arg("seed")) if arg("seed") is not None else None
        if seed is None and command == "simulate":
            seed = parse_seed(str(file_values.get("seed", "0")))
        seeds = [parse_seed(s) for s in arg("seeds").split(",") if s.strip()] if arg("seeds") else []
        n_keys_grid = parse_int_list(arg("n_keys_grid")) if arg("n_keys_grid") else []

        config = cls(
            command=command,
            paths=paths,
            n_keys=arg("n_keys", keyset_defaults.n_keys if command in ("simulate", "benchmark") else None),
            dim=arg("dim", keyset_defaults.dim if command in ("simulate", "benchmark") else None),
            stride=stride,
            mode=mode,
            seed=seed,
            seeds=seeds,
            n_keys_grid=n_keys_grid,
            tolerance=arg("tol"),
            cutoff_hz=arg("cutoff"),
            taps=arg("taps"),
            sample_rate=arg("sample_rate", 16000),
            scenario=arg("scenario"),
            lpf=bool(arg("lpf", False)),
            trim=bool(arg("trim", False)),
            identity=bool(arg("identity", False)),
            baseline=bool(arg("baseline", False)),
            key_correctness=bool(arg("key_correctness", False)),
            metric=arg("metric"),
            workers=arg("workers", 1),
            corpus=CorpusConfig(**corpus_values)
        )
        config.validate()
        return config

    def validate(self) -> None:
        for name in ("n_keys", "dim", "stride", "taps", "workers"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise InvalidParameterError(f"--{name.replace('_', '-')} must be >= 1, got {value}")
        if self.tolerance is not None and self.tolerance < 0:
            raise InvalidParameterError(f"--tol must be non-negative, got {self.tolerance}")
        if self.cutoff_hz is not None and self.cutoff_hz <= 0:
            raise InvalidParameterError(f"--cutoff must be positive, got {self.cutoff_hz}")
        if self.sample_rate < 1:
            raise InvalidParameterError(f"--sample-rate must be positive, got {self.sample_rate}")
        if any(n < 1 for n in self.n_keys_grid):
            raise InvalidParameterError("--n-keys-grid entries must be >= 1")

    def path(self, name: str) -> Path:
        """A resolved path flag that the command requires."""
        if name not in self.paths:
            raise InvalidParameterError(f"--{name.replace('_', '-')} is required for {self.command}")
        return self.paths[name]

    def keyset_config(self) -> KeysetConfig:
        return KeysetConfig(n_keys=self.n_keys, dim=self.dim, stride=self.stride)

    def lowpass_spec(self, sample_rate: int) -> LowPassSpec:
        defaults = LowPassSpec(sample_rate=sample_rate)
        return LowPassSpec(
            sample_rate=sample_rate,
            cutoff_hz=self.cutoff_hz if self.cutoff_hz is not None else defaults.cutoff_hz,
            taps=self.taps if self.taps is not None else defaults.taps
        )

    def to_dict(self) -> Dict[str, Any]:
        """Echo of the effective configuration; never includes key material."""
        return {
            "command": self.command,
            "n_keys": self.n_keys,
            "dim": self.dim,
            "stride": self.stride,
            "mode": self.mode,
            "seed": format_seed(self.seed) if self.seed is not None else None,
            "lpf": self.lpf,
            "corpus": self.corpus.to_dict()
        }
