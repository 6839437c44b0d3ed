"""
Runtime options for the tdw command line.
"""

import argparse
import os
from dataclasses import dataclass, field
from typing import List, Optional

from src.config.models import DEFAULT_BN_REFINEMENT
from src.core.exceptions import UsageError

COMMANDS = (
    "rank", "reduce", "equiv", "rigid", "canonical",
    "hyperelliptic", "witness", "decompose", "bn", "check",
)
CHECKS = ("rr", "clifford", "martens")


@dataclass
class RuntimeOptions:
    """Runtime options for one tdw invocation."""

    command: str = "rank"
    document_path: str = ""
    check: Optional[str] = None

    # Inputs
    divisors: List[str] = field(default_factory=list)
    base: Optional[str] = None
    r: Optional[int] = None
    d: Optional[int] = None
    refine: Optional[int] = None
    seed: Optional[int] = None

    # Output
    json_output: bool = False
    verbose: int = 0

    @property
    def divisor(self) -> Optional[str]:
        return self.divisors[0] if self.divisors else None

    @property
    def refinement(self) -> int:
        """Lattice refinement from --refine, then TDW_REFINE, then the default."""
        if self.refine is not None:
            return self.refine
        env_refine = os.getenv("TDW_REFINE")
        if env_refine:
            try:
                return int(env_refine)
            except ValueError:
                return DEFAULT_BN_REFINEMENT
        return DEFAULT_BN_REFINEMENT

    @classmethod
    def from_args(cls, args: Optional[List[str]] = None) -> 'RuntimeOptions':
        """
        Create RuntimeOptions from command line arguments.

        Args:
            args: Command line arguments (None uses sys.argv)

        Returns:
            RuntimeOptions instance

        Raises:
            UsageError: positional arguments do not fit the command
        """
        parser = cls._create_parser()
        parsed = parser.parse_args(args)

        targets = list(parsed.targets)
        check = None
        if parsed.command == "check":
            if len(targets) != 2:
                raise UsageError(f"usage: tdw check {{{','.join(CHECKS)}}} FILE")
            check = targets.pop(0)
        if len(targets) != 1:
            raise UsageError(f"usage: tdw {parsed.command} FILE [options]")

        return cls(
            command=parsed.command,
            document_path=targets[0],
            check=check,
            divisors=parsed.divisor or [],
            base=parsed.base,
            r=parsed.r,
            d=parsed.d,
            refine=parsed.refine,
            seed=parsed.seed,
            json_output=parsed.json,
            verbose=parsed.verbose,
        )

    @staticmethod
    def _create_parser() -> argparse.ArgumentParser:
        """Create the argument parser."""
        parser = argparse.ArgumentParser(
            prog="tdw",
            description="Divisor workbench for metrized complexes",
            formatter_class=argparse.RawDescriptionHelpFormatter
        )

        parser.add_argument("command", choices=COMMANDS, help="Operation to run")
        parser.add_argument(
            "targets",
            nargs="+",
            help="Document path (.tdc); for 'check', the check name followed by the path"
        )

        # Inputs
        parser.add_argument(
            "--divisor",
            action="append",
            help="Name of a divisor declared in the document (equiv takes two)"
        )
        parser.add_argument("--base", help="Base point: V, E(RAT), V[RAT] or a point name")
        parser.add_argument("--r", type=int, default=None, help="Rank parameter")
        parser.add_argument("--d", type=int, default=None, help="Degree parameter")
        parser.add_argument(
            "--refine",
            type=int,
            default=None,
            help=f"Lattice refinement for Brill-Noether searches (default: {DEFAULT_BN_REFINEMENT})"
        )
        parser.add_argument("--seed", type=int, default=None, help="Seed for randomized searches")

        # Output
        parser.add_argument("--json", action="store_true", help="Emit a JSON report on stdout")
        parser.add_argument(
            "-v", "--verbose",
            action="count",
            default=0,
            help="More diagnostics on stderr (-v info, -vv debug)"
        )

        return parser

    def validate(self) -> None:
        """
        Validate runtime options against the chosen command.

        Raises:
            UsageError: If options are invalid
        """
        needs_divisor = {"rank", "reduce", "rigid", "witness", "decompose"}
        if self.command in needs_divisor and not self.divisors:
            raise UsageError(f"{self.command} needs --divisor")
        if self.command == "check" and self.check in ("rr", "clifford") and not self.divisors:
            raise UsageError(f"check {self.check} needs --divisor")
        if self.command == "equiv" and len(self.divisors) != 2:
            raise UsageError("equiv needs exactly two --divisor options")
        if self.command == "reduce" and not self.base:
            raise UsageError("reduce needs --base")
        if self.command == "witness" and self.r is None:
            raise UsageError("witness needs --r")
        if self.command == "bn" or self.check == "martens":
            if self.r is None or self.d is None:
                raise UsageError(f"{self.check or self.command} needs --d and --r")
        if self.check is not None and self.check not in CHECKS:
            raise UsageError(f"unknown check {self.check}; choose from {', '.join(CHECKS)}")
        if self.refinement < 1:
            raise UsageError(f"--refine must be at least 1, got {self.refinement}")

    def __str__(self) -> str:
        """String representation of options."""
        lines = [
            "Runtime Options:",
            f"  Command: {self.command}{' ' + self.check if self.check else ''}",
            f"  Document: {self.document_path}",
        ]
        if self.divisors:
            lines.append(f"  Divisors: {', '.join(self.divisors)}")
        for label, value in (("Base", self.base), ("r", self.r), ("d", self.d), ("Seed", self.seed)):
            if value is not None:
                lines.append(f"  {label}: {value}")
        lines.append(f"  JSON: {self.json_output}")
        return "\n".join(lines)
