import logging
from typing import List, Optional, TextIO

from cli.command_registry import CommandRegistry
from cli.commands.cipher_commands import DecryptCommand, EncryptCommand
from cli.commands.key_commands import KeygenCommand, ValidateKeyCommand
from cli.commands.metrics_command import MetricsCommand
from cli.commands.model_commands import EncryptModelCommand, VerifyEquivalenceCommand
from cli.commands.preprocess_command import PreprocessCommand
from cli.commands.simulation_commands import BenchmarkCommand, SimulateCommand
from errors import EquivalenceError, KeyMismatchError, OrthoKeyError
from state.run_config import RunConfig
from utils import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ERROR = 2

class CliApplication:
    """
    Command-line entry point.
    Parses arguments, runs one command and maps errors to exit statuses.
    """

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        """
        Initialize the application.

        Args:
            stdout: Stream for JSON results (default sys.stdout)
            stderr: Stream for log output (default sys.stderr)
        """
        self.stdout = stdout
        self.stderr = stderr
        self.registry = CommandRegistry()
        self._register_commands()

    def _register_commands(self) -> None:
        for command_class in (KeygenCommand, EncryptCommand, DecryptCommand, EncryptModelCommand,
                              VerifyEquivalenceCommand, PreprocessCommand, MetricsCommand, SimulateCommand,
                              ValidateKeyCommand, BenchmarkCommand):
            self.registry.register(command_class(self.stdout))

    def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Run one invocation.

        Returns:
            0 on success, 1 on a failed check (equivalence, key mismatch, key
            validation), 2 on usage, I/O or format errors
        """
        parser = self.registry.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_ERROR
        configure_logging(quiet=args.quiet, verbose=args.verbose, stream=self.stderr)
        command = self.registry.get(args.command)
        try:
            return command.execute(RunConfig.from_namespace(args))
        except EquivalenceError as exc:
            logger.error("%s", exc)
            return EXIT_VALIDATION
        except KeyMismatchError as exc:
            logger.error("key mismatch: %s", exc)
            return EXIT_VALIDATION
        except OrthoKeyError as exc:
            logger.error("%s: %s", type(exc).__name__, exc)
            return EXIT_ERROR
        except OSError as exc:
            logger.error("I/O error: %s", exc)
            return EXIT_ERROR
