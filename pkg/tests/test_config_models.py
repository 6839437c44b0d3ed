"""Unit tests for the engine configuration."""

import os
import unittest
from unittest.mock import patch

from src.config.models import (
    DEFAULT_BN_REFINEMENT,
    DEFAULT_DENOMINATOR_BOUND,
    DEFAULT_SEARCH_BUDGET,
    ValidatedEngineConfig,
)
from src.core.exceptions import ConfigurationError


class TestValidatedEngineConfig(unittest.TestCase):
    """Test engine configuration validation."""

    def test_defaults(self):
        config = ValidatedEngineConfig()

        self.assertEqual(config.search_budget, DEFAULT_SEARCH_BUDGET)
        self.assertEqual(config.denominator_bound, DEFAULT_DENOMINATOR_BOUND)
        self.assertEqual(config.bn_refinement, DEFAULT_BN_REFINEMENT)
        self.assertEqual(config.threads, 1)
        self.assertIsNone(config.seed)

    def test_invalid_search_budget(self):
        with self.assertRaises(ConfigurationError) as ctx:
            ValidatedEngineConfig(search_budget=0)
        self.assertIn("Search budget", str(ctx.exception))

    def test_invalid_denominator_bound(self):
        with self.assertRaises(ConfigurationError):
            ValidatedEngineConfig(denominator_bound=2)

    def test_invalid_refinement(self):
        with self.assertRaises(ConfigurationError):
            ValidatedEngineConfig(bn_refinement=0)

    def test_invalid_threads(self):
        with self.assertRaises(ConfigurationError):
            ValidatedEngineConfig(threads=0)

    def test_negative_seed(self):
        with self.assertRaises(ConfigurationError):
            ValidatedEngineConfig(seed=-1)

    def test_large_refinement_warns(self):
        with self.assertLogs("src.config.models", level="WARNING"):
            ValidatedEngineConfig(bn_refinement=6)


class TestFromEnv(unittest.TestCase):
    """Test building the configuration from TDW_* variables."""

    @patch.dict(os.environ, {"TDW_THREADS": "4", "TDW_SEED": "11", "TDW_SEARCH_BUDGET": "50"})
    def test_reads_environment(self):
        config = ValidatedEngineConfig.from_env()

        self.assertEqual(config.threads, 4)
        self.assertEqual(config.seed, 11)
        self.assertEqual(config.search_budget, 50)

    @patch.dict(os.environ, {"TDW_SEED": "11"})
    def test_overrides_win(self):
        self.assertEqual(ValidatedEngineConfig.from_env(seed=5).seed, 5)

    @patch.dict(os.environ, {"TDW_SEED": "11"})
    def test_none_override_is_ignored(self):
        self.assertEqual(ValidatedEngineConfig.from_env(seed=None).seed, 11)

    @patch.dict(os.environ, {"TDW_THREADS": "many"})
    def test_non_integer_environment(self):
        with self.assertRaises(ConfigurationError) as ctx:
            ValidatedEngineConfig.from_env()
        self.assertIn("TDW_THREADS", str(ctx.exception))


if __name__ == '__main__':
    unittest.main()
