import argparse
import logging
import secrets

from cli.commands.base_command import BaseCommand
from data.files.key_file import read_key_file
from services.key_service import (ORTHOGONALITY_TOLERANCE, generate_keyset, keyset_fingerprint, save_keyset,
                                  validate_keyset)
from state.run_config import RunConfig
from utils import SEED_BITS

logger = logging.getLogger(__name__)

class KeygenCommand(BaseCommand):
    name = "keygen"
    help = "generate a key set of N random orthogonal matrices"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n-keys", type=int, required=True, help="number of matrices N")
        parser.add_argument("--dim", type=int, required=True, help="matrix dimension M (block size)")
        parser.add_argument("--seed", help="hex seed, up to 64 digits; drawn from the OS when omitted")
        parser.add_argument("--out", required=True, help="key file to write")

    def execute(self, config: RunConfig) -> int:
        seed = config.seed
        if seed is None:
            seed = secrets.randbits(SEED_BITS)
            logger.info("no --seed given; using a fresh random seed")
        keys = generate_keyset(config.n_keys, config.dim, seed)
        path = save_keyset(keys, config.path("out"))
        self.emit({
            "key_file": str(path),
            "n_keys": keys.n_keys,
            "dim": keys.dim,
            "fingerprint": keyset_fingerprint(keys).hex(),
            "provenance": keys.provenance.to_dict()
        })
        return 0

class ValidateKeyCommand(BaseCommand):
    name = "validate-key"
    help = "check every matrix of a key file for orthogonality"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--key", required=True, help="key file")
        parser.add_argument("--tol", type=float, default=ORTHOGONALITY_TOLERANCE, help="pass threshold")
        parser.add_argument("--out", help="write the JSON report here instead of stdout")

    def execute(self, config: RunConfig) -> int:
        keys = read_key_file(config.path("key"))
        report = validate_keyset(keys, config.tolerance)
        payload = report.to_dict()
        payload["fingerprint"] = keyset_fingerprint(keys).hex()
        payload["provenance"] = keys.provenance.to_dict()
        self.emit(payload, config.paths.get("out"))
        if not report.passed:
            logger.error("key set fails validation: max deviation %.3e > %.1e", report.max_deviation, config.tolerance)
            return 1
        return 0
