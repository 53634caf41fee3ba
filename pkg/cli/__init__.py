from cli.application import CliApplication
from cli.command_registry import CommandRegistry

__all__ = ['CliApplication', 'CommandRegistry']
