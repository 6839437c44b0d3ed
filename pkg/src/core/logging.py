"""
Logging for the divisor workbench.

Reports own stdout; every diagnostic goes to stderr. LOG_LEVEL sets the
starting level (WARNING when unset), ``-v``/``-vv`` on the command line
lower it, and LOG_FILE adds a full DEBUG trace of one run.
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional

CONSOLE_FORMAT = '%(levelname)s %(name)s: %(message)s'
FILE_FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(funcName)s:%(lineno)d - %(message)s'

# -v count -> console level
VERBOSITY_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


class WorkbenchLogger:
    """Process-wide logging setup, applied once on first use."""

    _instance: Optional['WorkbenchLogger'] = None
    _initialized: bool = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._setup_logging()
            self._initialized = True

    def _setup_logging(self):
        level = getattr(logging, os.getenv('LOG_LEVEL', 'WARNING').upper(), logging.WARNING)
        if not isinstance(level, int):
            level = logging.WARNING
        log_file = os.getenv('LOG_FILE', 'none')

        root_logger = logging.getLogger()
        root_logger.handlers.clear()

        self.console_handler = logging.StreamHandler(sys.stderr)
        self.console_handler.setLevel(level)
        if sys.stderr.isatty():
            self.console_handler.setFormatter(ColoredFormatter(CONSOLE_FORMAT))
        else:
            self.console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        root_logger.addHandler(self.console_handler)

        if log_file and log_file != 'none':
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, mode='w', encoding='utf-8')
            file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
            file_handler.setLevel(logging.DEBUG)
            root_logger.addHandler(file_handler)
            root_logger.setLevel(logging.DEBUG)
        else:
            root_logger.setLevel(level)

    def set_verbosity(self, verbose: int) -> None:
        """Lower the console level by one step per -v; never raises it above LOG_LEVEL."""
        if verbose <= 0:
            return
        level = min(VERBOSITY_LEVELS[min(verbose, len(VERBOSITY_LEVELS) - 1)], self.console_handler.level)
        self.console_handler.setLevel(level)
        root_logger = logging.getLogger()
        root_logger.setLevel(min(root_logger.level, level))

    @staticmethod
    def get_logger(name: str) -> logging.Logger:
        WorkbenchLogger()
        return logging.getLogger(name)


class ColoredFormatter(logging.Formatter):
    """Colors the level name on a terminal."""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
        'RESET': '\033[0m'
    }

    def format(self, record):
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.COLORS['RESET']}"

        result = super().format(record)

        # Reset levelname for other handlers
        record.levelname = levelname

        return result


def get_logger(name: str) -> logging.Logger:
    """
    Get a module logger, configuring logging on first use.

    Args:
        name: Module name (usually __name__)
    """
    return WorkbenchLogger.get_logger(name)


def set_verbosity(verbose: int) -> None:
    WorkbenchLogger().set_verbosity(verbose)


_logger_instance = WorkbenchLogger()
