"""Tests for Brill-Noether ranks and the Martens bound."""

import unittest
from fractions import Fraction

from src.config.models import ValidatedEngineConfig
from src.core.exceptions import PreconditionError
from src.brillnoether.rank import (
    bn_rank, contained_in_rank_class, lattice_points, martens_check, martens_completion,
)
from src.divisors.rank import rank_value
from src.model.divisor import Divisor
from src.model.points import EdgePoint, VertexPoint
from tests.fixtures import fixture

V1 = VertexPoint("v1")


class TestLattice(unittest.TestCase):

    def test_theta_half_lattice(self):
        points = lattice_points(fixture("theta").complex, 2)

        self.assertEqual(len(points), 5)
        self.assertIn(EdgePoint("e2", Fraction(1, 2)), points)

    def test_unit_refinement_is_just_vertices(self):
        self.assertEqual(len(lattice_points(fixture("k4").complex, 1)), 4)

    def test_refinement_must_be_positive(self):
        with self.assertRaises(PreconditionError):
            lattice_points(fixture("theta").complex, 0)


class TestContainedInRankClass(unittest.TestCase):

    def test_vertex_completes_to_g12(self):
        b4 = fixture("b4").complex
        self.assertTrue(contained_in_rank_class(b4, Divisor({V1: 1}), 2, 1))

    def test_full_degree_must_already_have_rank(self):
        b4 = fixture("b4").complex
        self.assertFalse(contained_in_rank_class(b4, Divisor({V1: 2}), 2, 1))

    def test_too_large(self):
        with self.assertRaises(PreconditionError):
            contained_in_rank_class(fixture("b4").complex, Divisor({V1: 3}), 2, 1)


class TestBNRank(unittest.TestCase):

    def setUp(self):
        self.config = ValidatedEngineConfig(threads=1)

    def test_b4_matches_hyperelliptic_value(self):
        result = bn_rank(fixture("b4").complex, 2, 1, refinement=2, config=self.config)

        self.assertEqual(result.rho, 0)
        self.assertTrue(result.exact)
        self.assertEqual(result.label, "exact")
        self.assertTrue(result.failures)

    def test_k4_has_no_g12(self):
        result = bn_rank(fixture("k4").complex, 2, 1, refinement=1, config=self.config)

        self.assertEqual(result.rho, -1)
        self.assertFalse(result.exact)

    def test_outside_martens_range_is_an_estimate(self):
        with self.assertLogs('src.brillnoether.rank', level='WARNING'):
            result = bn_rank(fixture("theta").complex, 2, 1, refinement=2, config=self.config)

        self.assertEqual(result.rho, 0)
        self.assertEqual(result.label, "estimate")

    def test_refinement_comes_from_config(self):
        k4 = fixture("k4").complex

        self.assertEqual(bn_rank(k4, 2, 1, config=ValidatedEngineConfig(bn_refinement=1)).refinement, 1)
        self.assertEqual(bn_rank(k4, 2, 1, refinement=1, config=ValidatedEngineConfig(bn_refinement=3)).refinement, 1)

    def test_threads_agree(self):
        serial = bn_rank(fixture("b4").complex, 2, 1, refinement=1, config=self.config)
        parallel = bn_rank(fixture("b4").complex, 2, 1, refinement=1, config=ValidatedEngineConfig(threads=3))
        self.assertEqual(serial.rho, parallel.rho)

    def test_components_of_positive_genus(self):
        with self.assertRaises(PreconditionError):
            bn_rank(fixture("fig1").complex, 2, 1, config=self.config)

    def test_rank_above_degree(self):
        with self.assertRaises(PreconditionError):
            bn_rank(fixture("b4").complex, 1, 2, config=self.config)


class TestMartens(unittest.TestCase):

    def setUp(self):
        self.config = ValidatedEngineConfig(threads=1)

    def test_hyperelliptic_attains_bound(self):
        report = martens_check(fixture("b4").complex, 2, 1, refinement=2, config=self.config)

        self.assertTrue(report.holds)
        self.assertTrue(report.tight)
        self.assertFalse(report.conjecture_instance)

    def test_k4_stays_below_bound(self):
        report = martens_check(fixture("k4").complex, 2, 1, refinement=1, config=self.config)

        self.assertTrue(report.holds)
        self.assertFalse(report.tight)
        self.assertFalse(report.hyperelliptic)

    def test_range(self):
        with self.assertRaises(PreconditionError):
            martens_check(fixture("theta").complex, 2, 1, config=self.config)

    def test_completion_adds_conjugates(self):
        theta = fixture("theta")
        completed = martens_completion(theta.complex, theta.divisor("P"), 1)

        self.assertEqual(completed, Divisor.from_points([
            EdgePoint("e1", Fraction(1, 3)), EdgePoint("e1", Fraction(2, 3)),
        ]))
        self.assertEqual(rank_value(theta.complex, completed), 1)

    def test_completion_needs_enough_points(self):
        theta = fixture("theta")
        with self.assertRaises(PreconditionError):
            martens_completion(theta.complex, theta.divisor("P"), 2)


if __name__ == '__main__':
    unittest.main()
