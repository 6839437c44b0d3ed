"""Property-based tests of the invariants of reduction, equivalence and rank."""

import unittest
from fractions import Fraction

from hypothesis import HealthCheck, given, settings, strategies as st

from src.brillnoether.rank import martens_check
from src.config.models import ValidatedEngineConfig
from src.divisors.rank import rank_value, verify_clifford, verify_riemann_roch
from src.divisors.reduction import class_of, is_equivalent, reduce_at
from src.hyperelliptic.structure import decompose, g12
from src.model.complex import genus, refine_with_map, transport_divisor
from src.model.divisor import Divisor
from src.model.function import ComplexFunction, apply_function
from src.model.points import ComponentPoint, EdgePoint, VertexPoint, mod_one
from tests.fixtures import fixture
from tests.strategies import (
    complexes, complexes_with_divisors, divisors, divisors_of_degree, effective, interior, points, sweep,
)

THETA = fixture("theta").complex
LOOP = fixture("loop").complex
B4 = fixture("b4").complex
FIG1 = fixture("fig1").complex

property_settings = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _split(complex_, divisor):
    """The graph part, and the degree and coordinate sum left on each genus-1 component."""
    graph = Divisor({p: c for p, c in divisor.items() if not isinstance(p, ComponentPoint)})
    components = {}
    for vertex in complex_.vertices:
        if vertex.genus:
            part = [(p, c) for p, c in divisor.items() if isinstance(p, ComponentPoint) and p.vertex == vertex.id]
            total = mod_one(sum((p.coordinate * c for p, c in part), Fraction(0)))
            components[vertex.id] = (sum(c for _, c in part), total)
    return graph, components


class TestReductionProperties(unittest.TestCase):

    @property_settings
    @given(divisors(FIG1), points(FIG1))
    def test_reduction_stays_in_the_class(self, divisor, base):
        reduced = reduce_at(FIG1, divisor, base)

        self.assertEqual(reduced.degree, divisor.degree)
        self.assertTrue(is_equivalent(FIG1, reduced, divisor))

    @property_settings
    @given(divisors(THETA), points(THETA))
    def test_reduction_is_idempotent(self, divisor, base):
        once = reduce_at(THETA, divisor, base)
        self.assertEqual(reduce_at(THETA, once, base), once)

    @property_settings
    @given(divisors(LOOP), points(LOOP), points(LOOP))
    def test_reduced_form_does_not_depend_on_the_representative(self, divisor, base, other_base):
        moved = reduce_at(LOOP, divisor, other_base)
        self.assertEqual(reduce_at(LOOP, moved, base), reduce_at(LOOP, divisor, base))

    @sweep(500)
    @given(st.data())
    def test_reduction_laws_on_random_complexes(self, data):
        complex_ = data.draw(complexes())
        divisor = data.draw(divisors_of_degree(complex_, -2, 2 * genus(complex_)))
        base = data.draw(points(complex_))
        edge = data.draw(st.sampled_from(complex_.edges))
        tent = ComplexFunction.tent(complex_, edge.id, data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3)))
        moved = apply_function(complex_, divisor, tent)

        reduced = reduce_at(complex_, divisor, base)
        self.assertEqual(moved.degree, divisor.degree)
        self.assertEqual(reduce_at(complex_, reduced, base), reduced)
        self.assertTrue(is_equivalent(complex_, reduced, divisor))
        self.assertEqual(_split(complex_, reduce_at(complex_, moved, base)), _split(complex_, reduced))


class TestEquivalenceProperties(unittest.TestCase):

    @property_settings
    @given(divisors(FIG1), divisors(FIG1))
    def test_symmetric(self, first, second):
        self.assertEqual(is_equivalent(FIG1, first, second), is_equivalent(FIG1, second, first))

    @property_settings
    @given(divisors(THETA), divisors(THETA), divisors(THETA))
    def test_compatible_with_addition(self, first, second, shift):
        if is_equivalent(THETA, first, second):
            self.assertTrue(is_equivalent(THETA, first + shift, second + shift))

    @property_settings
    @given(divisors(FIG1))
    def test_class_key_matches_equivalence(self, divisor):
        reduced = reduce_at(FIG1, divisor, VertexPoint("v2"))
        self.assertEqual(class_of(FIG1, reduced), class_of(FIG1, divisor))


class TestRankProperties(unittest.TestCase):

    @property_settings
    @given(divisors(THETA, size=2))
    def test_riemann_roch(self, divisor):
        self.assertTrue(verify_riemann_roch(THETA, divisor).holds)

    @sweep(200)
    @given(complexes_with_divisors())
    def test_riemann_roch_on_random_complexes(self, case):
        complex_, divisor = case
        report = verify_riemann_roch(complex_, divisor)
        self.assertEqual(report.lhs, report.rhs, f"{divisor} on {complex_}")

    @sweep(50)
    @given(st.data())
    def test_clifford_on_random_complexes(self, data):
        complex_ = data.draw(complexes(max_genus=4))
        divisor = data.draw(effective(complex_, size=max(0, 2 * genus(complex_) - 2)))
        self.assertTrue(verify_clifford(complex_, divisor).holds)

    @sweep(50)
    @given(st.data())
    def test_rank_survives_refinement(self, data):
        complex_ = data.draw(complexes(max_genus=4))
        divisor = data.draw(effective(complex_, size=genus(complex_)))
        edge = data.draw(st.sampled_from(complex_.edges))
        refined, transport = refine_with_map(complex_, [EdgePoint(edge.id, edge.length * data.draw(interior))])

        self.assertEqual(rank_value(refined, transport_divisor(transport, divisor)), rank_value(complex_, divisor))

    @property_settings
    @given(effective(THETA), points(THETA))
    def test_adding_a_point_raises_rank_by_at_most_one(self, divisor, point):
        before = rank_value(THETA, divisor)
        after = rank_value(THETA, divisor + Divisor({point: 1}))
        self.assertIn(after - before, (0, 1))

    @property_settings
    @given(effective(LOOP, size=4))
    def test_loop_rank_is_degree_minus_one(self, divisor):
        expected = divisor.degree - 1 if divisor.degree else 0
        self.assertEqual(rank_value(LOOP, divisor), expected)


class TestHyperellipticProperties(unittest.TestCase):

    @sweep(60)
    @given(st.data())
    def test_decompose_on_hyperelliptic_fixtures(self, data):
        complex_ = data.draw(st.sampled_from([THETA, B4, FIG1]))
        divisor = data.draw(effective(complex_, size=genus(complex_)))
        decomposition = decompose(complex_, divisor)

        pencil = g12(complex_).representative
        self.assertTrue(is_equivalent(complex_, decomposition.rank * pencil + decomposition.residual, divisor))
        self.assertGreaterEqual(decomposition.reduced[decomposition.fixed_point], 2 * decomposition.rank)

    @sweep(10)
    @given(complexes(min_genus=3, max_genus=4, elliptic=False))
    def test_martens_bound_on_random_graphs(self, graph):
        report = martens_check(graph, 2, 1, refinement=2, config=ValidatedEngineConfig(threads=1))

        self.assertTrue(report.within_bound)
        self.assertTrue(report.holds)


class TestDivisorAlgebra(unittest.TestCase):

    @given(divisors(FIG1), divisors(FIG1))
    def test_subtraction_undoes_addition(self, first, second):
        self.assertEqual((first + second) - second, first)

    @given(divisors(FIG1), divisors(FIG1))
    def test_cap_and_cup_bound_both(self, first, second):
        self.assertTrue(first.cap(second) <= first <= first.cup(second))
        self.assertEqual(first.cap(second) + first.cup(second), first + second)


if __name__ == '__main__':
    unittest.main()
