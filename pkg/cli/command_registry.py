import argparse
from typing import Dict, List, Optional

from cli.commands.base_command import BaseCommand

class CommandRegistry:
    """Holds the subcommands and builds the argument parser from them."""

    def __init__(self):
        self.commands: Dict[str, BaseCommand] = {}

    def register(self, command: BaseCommand) -> None:
        """
        Add a command under its name.

        Args:
            command: The command to add; a later command with the same name replaces it
        """
        self.commands[command.name] = command

    def get(self, name: str) -> Optional[BaseCommand]:
        return self.commands.get(name)

    @property
    def names(self) -> List[str]:
        return list(self.commands)

    def build_parser(self, prog: str = "orthokey") -> argparse.ArgumentParser:
        """Top-level parser with one subparser per registered command."""
        parser = argparse.ArgumentParser(
            prog=prog,
            description="Block-orthogonal speech encryption with multiple secret keys."
        )
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument("--quiet", action="store_true", help="log warnings and errors only")
        verbosity.add_argument("--verbose", action="store_true", help="log debug detail")
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        subparsers.required = True
        for name, command in self.commands.items():
            command.add_arguments(subparsers.add_parser(name, help=command.help, description=command.help))
        return parser
