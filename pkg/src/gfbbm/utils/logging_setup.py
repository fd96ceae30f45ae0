"""Console logging with colorama-coloured level names."""

import logging
import sys
from typing import Dict

from colorama import Fore, Style, init

init()

_LEVEL_COLORS: Dict[int, str] = {
    logging.DEBUG: Fore.BLUE,
    logging.INFO: Fore.CYAN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Formatter that colours the level name."""

    def format(self, record: logging.LogRecord) -> str:
        color = _LEVEL_COLORS.get(record.levelno, "")
        level = f"{color}{record.levelname:<8}{Style.RESET_ALL}"
        return f"{level} {record.name}: {record.getMessage()}"


def configure_logging(verbosity: int = 0, quiet: bool = False) -> None:
    """Install a single stderr handler on the package logger."""
    if quiet:
        level = logging.WARNING
    elif verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING

    logger = logging.getLogger("gfbbm")
    logger.setLevel(level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColorFormatter())
    logger.addHandler(handler)
    logger.propagate = False
