"""
Command line runner: options in, report out, exit code back.

Exit codes: 0 success, 1 a failed check or a computation error,
2 a usage, configuration or document parse error.
"""

import sys
import time
from typing import List, Optional

from src.cli.commands import get_registry
from src.cli.reports import Report
from src.config.models import ValidatedEngineConfig
from src.core.exceptions import ConfigurationError, DocumentParseError, UsageError, WorkbenchError
from src.core.logging import get_logger, set_verbosity
from src.core.options import RuntimeOptions
from src.dsl.parser import load_document

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _emit(report: Report, json_output: bool) -> None:
    print(report.to_json() if json_output else report.to_text())


def run(argv: Optional[List[str]] = None) -> int:
    """Run one tdw command and return its exit code."""
    try:
        options = RuntimeOptions.from_args(argv)
        options.validate()
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    except UsageError as e:
        print(f"tdw: {e}", file=sys.stderr)
        return EXIT_USAGE

    set_verbosity(options.verbose)
    logger.debug(options)
    command = get_registry().get(options.command)
    report = Report(command=options.command if not options.check else f"check {options.check}")

    try:
        started = time.perf_counter()
        document = load_document(options.document_path)
        report.timings["parse"] = time.perf_counter() - started

        config = ValidatedEngineConfig.from_env(seed=options.seed, bn_refinement=options.refinement)
        started = time.perf_counter()
        command.handler(document, options, config, report)
        report.timings["compute"] = time.perf_counter() - started
    except (ConfigurationError, DocumentParseError, UsageError) as e:
        print(f"tdw: {options.document_path}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except WorkbenchError as e:
        logger.error(f"{report.command} failed: {e}")
        print(f"tdw: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED

    _emit(report, options.json_output)
    return EXIT_OK if report.passed else EXIT_FAILED
