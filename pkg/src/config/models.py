"""
Engine configuration with validation.
"""

import os
from dataclasses import dataclass
from typing import Optional

from src.core.exceptions import ConfigurationError
from src.core.logging import get_logger

logger = get_logger(__name__)

DEFAULT_SEARCH_BUDGET = 10_000
DEFAULT_DENOMINATOR_BOUND = 29
DEFAULT_BN_REFINEMENT = 2


@dataclass
class ValidatedEngineConfig:
    """Tunables of the randomized searches and lattice enumerations."""

    search_budget: int = DEFAULT_SEARCH_BUDGET
    denominator_bound: int = DEFAULT_DENOMINATOR_BOUND
    bn_refinement: int = DEFAULT_BN_REFINEMENT
    threads: int = 1
    seed: Optional[int] = None

    def __post_init__(self):
        """Validate configuration after initialization."""
        if not 1 <= self.search_budget <= 1_000_000:
            raise ConfigurationError(
                f"Search budget must be between 1 and 1000000, got {self.search_budget}"
            )

        if not 3 <= self.denominator_bound <= 10_000:
            raise ConfigurationError(
                f"Denominator bound must be between 3 and 10000, got {self.denominator_bound}"
            )

        if not 1 <= self.bn_refinement <= 12:
            raise ConfigurationError(
                f"Brill-Noether refinement must be between 1 and 12, got {self.bn_refinement}"
            )

        if not 1 <= self.threads <= 64:
            raise ConfigurationError(f"Threads must be between 1 and 64, got {self.threads}")

        if self.seed is not None and self.seed < 0:
            raise ConfigurationError(f"Seed must be non-negative, got {self.seed}")

        # Lattice enumeration grows combinatorially with the refinement
        if self.bn_refinement > 4:
            logger.warning(
                f"Brill-Noether refinement {self.bn_refinement} enumerates large lattices; "
                "expect long runtimes beyond genus 3."
            )

    @classmethod
    def from_env(cls, **overrides) -> 'ValidatedEngineConfig':
        """
        Build a configuration from TDW_* environment variables.

        Args:
            overrides: Explicit values that win over the environment (None is ignored)

        Returns:
            ValidatedEngineConfig instance
        """
        values = {
            'search_budget': _env_int('TDW_SEARCH_BUDGET', DEFAULT_SEARCH_BUDGET),
            'threads': _env_int('TDW_THREADS', 1),
            'seed': _env_int('TDW_SEED', None),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")
