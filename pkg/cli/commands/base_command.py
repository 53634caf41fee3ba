import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, TextIO

from state.run_config import RunConfig

logger = logging.getLogger(__name__)

class BaseCommand:
    """Base class for all subcommands."""

    name: str = ""
    help: str = ""

    def __init__(self, stdout: Optional[TextIO] = None):
        """
        Initialize the command.

        Args:
            stdout: Stream for machine-readable results (sys.stdout when None)
        """
        self._stdout = stdout

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the command's flags."""

    def execute(self, config: RunConfig) -> int:
        """
        Run the command.

        Args:
            config: Validated flag set

        Returns:
            Exit status (0 success, 1 validation failure)
        """
        raise NotImplementedError

    @property
    def stdout(self) -> TextIO:
        return self._stdout or sys.stdout

    def emit(self, payload: Dict[str, Any], out_path: Optional[Path] = None) -> None:
        """Write a JSON result to out_path, or to the output stream."""
        text = json.dumps(payload, indent=2, sort_keys=True)
        if out_path is not None:
            out_path.write_text(text + "\n", encoding="utf-8")
            logger.info("%s result written to %s", self.name, out_path)
        else:
            self.stdout.write(text + "\n")
