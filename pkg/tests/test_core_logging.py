"""Unit tests for the WorkbenchLogger."""

import logging
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from src.core.logging import ColoredFormatter, WorkbenchLogger, get_logger, set_verbosity


class TestWorkbenchLogger(unittest.TestCase):
    """Test cases for WorkbenchLogger."""

    def setUp(self):
        WorkbenchLogger._instance = None
        WorkbenchLogger._initialized = False
        logging.getLogger().handlers.clear()
        logging.getLogger().setLevel(logging.WARNING)

    def tearDown(self):
        for handler in logging.getLogger().handlers:
            handler.close()
        WorkbenchLogger._instance = None
        WorkbenchLogger._initialized = False
        logging.getLogger().handlers.clear()
        logging.getLogger().setLevel(logging.WARNING)

    def test_singleton_pattern(self):
        self.assertIs(WorkbenchLogger(), WorkbenchLogger())

    @patch.dict(os.environ, {"LOG_LEVEL": "DEBUG", "LOG_FILE": "none"})
    def test_log_level_from_environment(self):
        WorkbenchLogger()
        self.assertEqual(logging.getLogger().level, logging.DEBUG)

    @patch.dict(os.environ, {"LOG_FILE": "none"}, clear=True)
    def test_default_level_is_warning(self):
        """Reports own stdout, so the command line stays quiet by default."""
        WorkbenchLogger()
        self.assertEqual(logging.getLogger().level, logging.WARNING)

    @patch.dict(os.environ, {"LOG_LEVEL": "LOUD", "LOG_FILE": "none"})
    def test_invalid_log_level_falls_back_to_warning(self):
        WorkbenchLogger()
        self.assertEqual(logging.getLogger().level, logging.WARNING)

    @patch.dict(os.environ, {"LOG_FILE": "none"})
    def test_console_handler_writes_to_stderr(self):
        WorkbenchLogger()
        stream_handlers = [
            h for h in logging.getLogger().handlers
            if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
        ]
        self.assertEqual(len(stream_handlers), 1)
        self.assertIs(stream_handlers[0].stream, sys.stderr)

    def test_log_file_gets_debug_trace(self):
        with tempfile.TemporaryDirectory() as temp_dir:
            log_file = os.path.join(temp_dir, "logs", "tdw.log")
            with patch.dict(os.environ, {"LOG_FILE": log_file}):
                WorkbenchLogger()
                file_handlers = [h for h in logging.getLogger().handlers if isinstance(h, logging.FileHandler)]
                self.assertEqual(len(file_handlers), 1)
                self.assertEqual(file_handlers[0].level, logging.DEBUG)
                self.assertEqual(logging.getLogger().level, logging.DEBUG)
                self.assertTrue(Path(temp_dir, "logs").exists())

    @patch.dict(os.environ, {"LOG_FILE": "none"}, clear=True)
    def test_verbosity_lowers_console_level(self):
        workbench = WorkbenchLogger()

        set_verbosity(1)
        self.assertEqual(workbench.console_handler.level, logging.INFO)
        set_verbosity(5)
        self.assertEqual(workbench.console_handler.level, logging.DEBUG)
        self.assertEqual(logging.getLogger().level, logging.DEBUG)

    @patch.dict(os.environ, {"LOG_LEVEL": "DEBUG", "LOG_FILE": "none"})
    def test_verbosity_never_raises_the_level(self):
        workbench = WorkbenchLogger()

        set_verbosity(1)
        set_verbosity(0)
        self.assertEqual(workbench.console_handler.level, logging.DEBUG)

    @patch.dict(os.environ, {"LOG_FILE": "none"})
    def test_repeated_construction_keeps_handlers(self):
        WorkbenchLogger()
        count = len(logging.getLogger().handlers)
        WorkbenchLogger()
        self.assertEqual(len(logging.getLogger().handlers), count)

    @patch.dict(os.environ, {"LOG_FILE": "none"})
    def test_get_logger_function(self):
        logger = get_logger("src.divisors.rank")
        self.assertIsInstance(logger, logging.Logger)
        self.assertEqual(logger.name, "src.divisors.rank")


class TestColoredFormatter(unittest.TestCase):
    """Test cases for ColoredFormatter."""

    def _record(self, level):
        return logging.LogRecord("test", level, "", 0, "reduced after 3 firing rounds", (), None)

    def test_format_adds_color_codes(self):
        formatted = ColoredFormatter('%(levelname)s - %(message)s').format(self._record(logging.WARNING))
        self.assertIn('\033[33m', formatted)
        self.assertIn('\033[0m', formatted)
        self.assertIn('firing rounds', formatted)

    def test_levelname_reset_after_format(self):
        record = self._record(logging.ERROR)
        ColoredFormatter('%(levelname)s').format(record)
        self.assertEqual(record.levelname, "ERROR")


if __name__ == '__main__':
    unittest.main()
