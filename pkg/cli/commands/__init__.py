from cli.commands.base_command import BaseCommand
from cli.commands.cipher_commands import DecryptCommand, EncryptCommand
from cli.commands.key_commands import KeygenCommand, ValidateKeyCommand
from cli.commands.metrics_command import MetricsCommand
from cli.commands.model_commands import EncryptModelCommand, VerifyEquivalenceCommand
from cli.commands.preprocess_command import PreprocessCommand
from cli.commands.simulation_commands import BenchmarkCommand, SimulateCommand

__all__ = [
    'BaseCommand', 'DecryptCommand', 'EncryptCommand', 'KeygenCommand', 'ValidateKeyCommand',
    'MetricsCommand', 'EncryptModelCommand', 'VerifyEquivalenceCommand', 'PreprocessCommand',
    'BenchmarkCommand', 'SimulateCommand'
]
