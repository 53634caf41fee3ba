import argparse
import logging

from cli.commands.base_command import BaseCommand
from data.files.model_file import read_model, write_model
from data.files.wav_file import read_wav
from errors import EquivalenceError
from services.convfront_service import encrypt_model, verify_equivalence
from services.key_service import load_keyset
from state.run_config import RunConfig

logger = logging.getLogger(__name__)

class EncryptModelCommand(BaseCommand):
    name = "encrypt-model"
    help = "encrypt the first convolution layer of a front-end model"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--key", required=True, help="key file")
        parser.add_argument("--model-in", required=True, help="plain model file")
        parser.add_argument("--model-out", required=True, help="encrypted model file to write")

    def execute(self, config: RunConfig) -> int:
        keys = load_keyset(config.path("key"))
        encrypted = encrypt_model(read_model(config.path("model_in")), keys)
        path = write_model(encrypted, config.path("model_out"))
        summary = encrypted.summary()
        summary["model"] = str(path)
        self.emit(summary)
        return 0

class VerifyEquivalenceCommand(BaseCommand):
    name = "verify-equivalence"
    help = "compare the encrypted pipeline with the plain front-end on one WAV"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--key", required=True, help="key file used to encrypt the audio")
        parser.add_argument("--model", required=True, help="plain model file")
        parser.add_argument("--wav", required=True, help="audio to run through both pipelines")
        parser.add_argument("--tol", type=float, default=1e-9, help="maximum allowed absolute deviation")
        parser.add_argument("--encrypted-model",
                            help="encrypted model file; by default the plain model is encrypted with --key")
        parser.add_argument("--out", help="write the JSON report here instead of stdout")

    def execute(self, config: RunConfig) -> int:
        keys = load_keyset(config.path("key"))
        plain = read_model(config.path("model"))
        if "encrypted_model" in config.paths:
            encrypted = read_model(config.paths["encrypted_model"])
        else:
            encrypted = encrypt_model(plain, keys)
        report = verify_equivalence(plain, encrypted, keys, read_wav(config.path("wav")), config.tolerance)
        self.emit(report.to_dict(), config.paths.get("out"))
        if not report.passed:
            raise EquivalenceError(
                f"encrypted pipeline deviates by {report.max_abs_deviation:.3e} (tolerance {config.tolerance:.1e})",
                report.max_abs_deviation)
        return 0
