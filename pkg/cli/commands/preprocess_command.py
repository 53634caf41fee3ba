import argparse
import logging

from cli.commands.base_command import BaseCommand
from data.files.container import read_container
from data.files.wav_file import read_wav, write_wav
from data.models.waveform import Waveform
from services.preprocess_service import lowpass, trim_overlap
from state.run_config import RunConfig

logger = logging.getLogger(__name__)

class PreprocessCommand(BaseCommand):
    name = "preprocess"
    help = "attacker-side preprocessing: overlap trimming or low-pass filtering"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        action = parser.add_mutually_exclusive_group(required=True)
        action.add_argument("--trim", action="store_true", help="trim an overlapping container to a WAV")
        action.add_argument("--lpf", action="store_true", help="low-pass filter a WAV")
        parser.add_argument("--in", dest="input", required=True, help="container (--trim) or WAV (--lpf)")
        parser.add_argument("--out", required=True, help="WAV to write")
        parser.add_argument("--cutoff", type=float, help="low-pass cutoff in Hz (default 4000)")
        parser.add_argument("--taps", type=int, help="FIR length, odd (default 101)")
        parser.add_argument("--sample-rate", type=int, default=16000, help="rate of a trimmed container")

    def execute(self, config: RunConfig) -> int:
        payload = {"operation": "trim" if config.trim else "lpf"}
        if config.trim:
            samples = trim_overlap(read_container(config.path("input")))
            waveform = Waveform(samples, config.sample_rate)
        else:
            source = read_wav(config.path("input"))
            spec = config.lowpass_spec(source.sample_rate)
            waveform = lowpass(source, spec)
            payload["filter"] = spec.to_dict()
        path = write_wav(waveform, config.path("out"))
        payload.update({"wav": str(path), "samples": waveform.length, "sample_rate": waveform.sample_rate})
        self.emit(payload)
        return 0
