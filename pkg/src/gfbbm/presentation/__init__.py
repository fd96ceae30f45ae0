"""Presentation layer for gfbbm-lab."""

from .cli_parser import CLIParser
from .console_interface import ConsoleInterface, exit_code_for
from .formatters import ResultFormatter, TableFormatter

__all__ = ["CLIParser", "ConsoleInterface", "ResultFormatter", "TableFormatter", "exit_code_for"]
