"""Cross-checks of the metric engine against finite chip firing on subdivisions."""

import unittest
from itertools import combinations_with_replacement, product

from src.divisors.rank import rank_value
from src.divisors.reduction import class_of, is_equivalent, reduce_at
from src.model.divisor import Divisor
from src.model.points import VertexPoint
from tests.chip_firing_oracle import FiniteGraph
from tests.fixtures import fixture

GRAPHS = ("loop", "theta", "b4", "k4")


class TestOracleItself(unittest.TestCase):

    def test_spanning_trees(self):
        expected = {"theta": 3, "b4": 4, "k4": 16}
        for name, count in expected.items():
            with self.subTest(fixture=name):
                self.assertEqual(FiniteGraph.subdivide(fixture(name).complex, 1).spanning_trees(), count)

    def test_rejects_elliptic_components(self):
        with self.assertRaises(ValueError):
            FiniteGraph.subdivide(fixture("fig1").complex, 2)


class TestAgainstOracle(unittest.TestCase):

    def test_ranks_of_small_effective_divisors(self):
        for name in GRAPHS:
            complex_ = fixture(name).complex
            oracle = FiniteGraph.subdivide(complex_, 2)
            for degree in (1, 2):
                for chosen in combinations_with_replacement(oracle.nodes, degree):
                    divisor = Divisor.from_points(chosen)
                    with self.subTest(fixture=name, divisor=str(divisor)):
                        self.assertEqual(rank_value(complex_, divisor), oracle.rank(divisor))

    def test_ranks_with_negative_part(self):
        for name in ("theta", "b4", "k4"):
            complex_ = fixture(name).complex
            oracle = FiniteGraph.subdivide(complex_, 1)
            for first, second in product(oracle.nodes, repeat=2):
                divisor = Divisor({first: 3}) - Divisor({second: 1})
                with self.subTest(fixture=name, divisor=str(divisor)):
                    self.assertEqual(rank_value(complex_, divisor), oracle.rank(divisor))

    def test_reduced_divisors_agree(self):
        for name in GRAPHS:
            complex_ = fixture(name).complex
            oracle = FiniteGraph.subdivide(complex_, 2)
            for chosen in combinations_with_replacement(oracle.nodes, 2):
                divisor = Divisor.from_points(chosen)
                for base in (p for p in oracle.nodes if isinstance(p, VertexPoint)):
                    with self.subTest(fixture=name, divisor=str(divisor), base=str(base)):
                        self.assertEqual(reduce_at(complex_, divisor, base), oracle.reduce(divisor, base))

    def test_equivalence_agrees(self):
        complex_ = fixture("theta").complex
        oracle = FiniteGraph.subdivide(complex_, 2)
        divisors = [Divisor.from_points(c) for c in combinations_with_replacement(oracle.nodes, 2)]
        for first, second in product(divisors, repeat=2):
            with self.subTest(first=str(first), second=str(second)):
                self.assertEqual(is_equivalent(complex_, first, second), oracle.equivalent(first, second))

    def test_degree_zero_classes_count_spanning_trees(self):
        complex_ = fixture("k4").complex
        oracle = FiniteGraph.subdivide(complex_, 1)
        a, b, c, d = (VertexPoint(v) for v in "abcd")
        keys = set()
        for x, y, z in product(range(4), repeat=3):
            divisor = Divisor({a: x, b: y, c: z, d: -(x + y + z)})
            keys.add(class_of(complex_, divisor))
        self.assertEqual(len(keys), oracle.spanning_trees())


if __name__ == '__main__':
    unittest.main()
