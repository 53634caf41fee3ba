import argparse
import logging

from cli.commands.base_command import BaseCommand
from data.files.container import read_container, write_container
from data.files.wav_file import read_wav, write_wav
from data.models.waveform import Waveform
from services.cipher_service import decrypt, encrypt
from services.framing_service import frame_overlapping, frame_plain, reconstruct
from services.key_service import load_keyset
from state.run_config import RunConfig

logger = logging.getLogger(__name__)

class EncryptCommand(BaseCommand):
    name = "encrypt"
    help = "frame and encrypt a WAV file into an encrypted-audio container"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--key", required=True, help="key file")
        parser.add_argument("--in", dest="input", required=True, help="input WAV")
        parser.add_argument("--out", required=True, help="container to write")
        parser.add_argument("--mode", choices=("plain", "overlapping"), help="framing mode (default plain)")
        parser.add_argument("--stride", type=int, help="hop S for overlapping framing")

    def execute(self, config: RunConfig) -> int:
        keys = load_keyset(config.path("key"))
        waveform = read_wav(config.path("input"))
        if config.mode == "overlapping":
            framed = frame_overlapping(waveform, keys.dim, config.stride)
        else:
            framed = frame_plain(waveform, keys.dim)
        encrypted = encrypt(framed, keys)
        path = write_container(encrypted, config.path("out"))
        self.emit({
            "container": str(path),
            "mode": framed.descriptor.mode.value,
            "blocks": encrypted.block_count,
            "block_size": encrypted.block_size,
            "n_keys": encrypted.n_keys_used,
            "sample_rate": waveform.sample_rate,
            "framing": encrypted.descriptor.to_dict()
        })
        return 0

class DecryptCommand(BaseCommand):
    name = "decrypt"
    help = "decrypt a container back to a WAV file"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--key", required=True, help="key file")
        parser.add_argument("--in", dest="input", required=True, help="container to read")
        parser.add_argument("--out", required=True, help="WAV to write")
        parser.add_argument("--sample-rate", type=int, default=16000, help="rate of the output WAV")

    def execute(self, config: RunConfig) -> int:
        keys = load_keyset(config.path("key"))
        encrypted = read_container(config.path("input"))
        samples = reconstruct(decrypt(encrypted, keys))
        path = write_wav(Waveform(samples, config.sample_rate), config.path("out"))
        self.emit({"wav": str(path), "samples": int(samples.size), "sample_rate": config.sample_rate})
        return 0
