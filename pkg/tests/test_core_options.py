"""Unit tests for RuntimeOptions."""

import os
import unittest
from unittest.mock import patch

from src.core.exceptions import UsageError
from src.core.options import RuntimeOptions


class TestRuntimeOptions(unittest.TestCase):
    """Test cases for RuntimeOptions."""

    def test_default_values(self):
        options = RuntimeOptions()

        self.assertEqual(options.command, "rank")
        self.assertEqual(options.divisors, [])
        self.assertIsNone(options.divisor)
        self.assertFalse(options.json_output)

    def test_from_args_rank(self):
        options = RuntimeOptions.from_args(["rank", "fixtures/fig1.tdc", "--divisor", "D4x", "--json"])

        self.assertEqual(options.command, "rank")
        self.assertEqual(options.document_path, "fixtures/fig1.tdc")
        self.assertEqual(options.divisor, "D4x")
        self.assertTrue(options.json_output)

    def test_from_args_check_takes_kind_then_path(self):
        options = RuntimeOptions.from_args(["check", "rr", "fixtures/fig1.tdc", "--divisor", "D4x"])

        self.assertEqual(options.check, "rr")
        self.assertEqual(options.document_path, "fixtures/fig1.tdc")

    def test_from_args_equiv_collects_two_divisors(self):
        options = RuntimeOptions.from_args(["equiv", "f.tdc", "--divisor", "A", "--divisor", "B"])
        self.assertEqual(options.divisors, ["A", "B"])

    def test_from_args_numeric_options(self):
        options = RuntimeOptions.from_args(["bn", "f.tdc", "--d", "2", "--r", "1", "--refine", "3", "--seed", "7"])

        self.assertEqual((options.d, options.r, options.refine, options.seed), (2, 1, 3, 7))
        self.assertEqual(options.refinement, 3)

    def test_verbosity_counts_flags(self):
        self.assertEqual(RuntimeOptions.from_args(["rank", "f.tdc", "-vv"]).verbose, 2)
        self.assertEqual(RuntimeOptions.from_args(["rank", "f.tdc"]).verbose, 0)

    def test_check_without_kind_is_usage_error(self):
        with self.assertRaises(UsageError):
            RuntimeOptions.from_args(["check", "f.tdc"])

    def test_extra_targets_are_usage_error(self):
        with self.assertRaises(UsageError):
            RuntimeOptions.from_args(["rank", "a.tdc", "b.tdc"])

    def test_unknown_command_exits(self):
        with self.assertRaises(SystemExit):
            RuntimeOptions.from_args(["frobnicate", "f.tdc"])

    @patch.dict(os.environ, {"TDW_REFINE": "4"})
    def test_refinement_from_environment(self):
        self.assertEqual(RuntimeOptions().refinement, 4)

    @patch.dict(os.environ, {"TDW_REFINE": "fine"})
    def test_invalid_refinement_from_environment(self):
        self.assertEqual(RuntimeOptions().refinement, 2)

    @patch.dict(os.environ, {"TDW_REFINE": "4"})
    def test_args_override_environment(self):
        options = RuntimeOptions.from_args(["bn", "f.tdc", "--d", "2", "--r", "1", "--refine", "2"])
        self.assertEqual(options.refinement, 2)

    def test_validate_success(self):
        RuntimeOptions(command="reduce", document_path="f.tdc", divisors=["D"], base="v1").validate()

    def test_validate_missing_divisor(self):
        with self.assertRaises(UsageError) as context:
            RuntimeOptions(command="rank", document_path="f.tdc").validate()
        self.assertIn("--divisor", str(context.exception))

    def test_validate_reduce_needs_base(self):
        with self.assertRaises(UsageError):
            RuntimeOptions(command="reduce", document_path="f.tdc", divisors=["D"]).validate()

    def test_validate_equiv_needs_two(self):
        with self.assertRaises(UsageError):
            RuntimeOptions(command="equiv", document_path="f.tdc", divisors=["D"]).validate()

    def test_validate_martens_needs_degree_and_rank(self):
        with self.assertRaises(UsageError):
            RuntimeOptions(command="check", check="martens", document_path="f.tdc", d=2).validate()

    def test_validate_unknown_check(self):
        with self.assertRaises(UsageError):
            RuntimeOptions(command="check", check="gonality", document_path="f.tdc").validate()

    def test_validate_refinement_positive(self):
        with self.assertRaises(UsageError):
            RuntimeOptions(command="bn", document_path="f.tdc", d=2, r=1, refine=0).validate()

    def test_string_representation(self):
        text = str(RuntimeOptions(command="rank", document_path="f.tdc", divisors=["D"], seed=3))

        self.assertIn("Command: rank", text)
        self.assertIn("Divisors: D", text)
        self.assertIn("Seed: 3", text)


if __name__ == '__main__':
    unittest.main()
