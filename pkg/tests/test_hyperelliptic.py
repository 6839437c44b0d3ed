"""Tests for involutions, the hyperelliptic structure test, iota and decompositions."""

import unittest
from fractions import Fraction

from src.core.exceptions import InvalidPointError, NotHyperellipticError, PreconditionError
from src.divisors.reduction import class_of, is_equivalent
from src.hyperelliptic.involution import incidence_graph, involutions, is_tree_quotient, quotient
from src.hyperelliptic.structure import decompose, g12, gonality_two_search, iota, structure_check
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, VertexPoint
from tests.fixtures import fixture


class TestInvolutions(unittest.TestCase):

    def test_incidence_graph_has_a_node_per_vertex_and_edge(self):
        k4 = fixture("k4").complex
        self.assertEqual(incidence_graph(k4).number_of_nodes(), 10)

    def test_identity_comes_first(self):
        found = involutions(fixture("theta").complex)
        self.assertTrue(found[0].is_identity)

    def test_identity_comes_first_with_elliptic_components(self):
        found = involutions(fixture("fig1").complex)

        self.assertTrue(found[0].is_identity)
        self.assertEqual(str(found[0]), "id")

    def test_every_component_map_is_listed(self):
        fig1 = fixture("fig1").complex
        fixing_the_graph = [
            i for i in involutions(fig1)
            if all(e == f for e, f in i.edge_map.items()) and all(v == w for v, w in i.vertex_map.items())
        ]

        self.assertEqual(len(fixing_the_graph), 4)
        self.assertEqual(
            {i.component_maps["v1"] for i in fixing_the_graph}, {(1, Fraction(0)), (-1, Fraction(0))},
        )

    def test_component_maps_are_printed(self):
        fig1 = fixture("fig1").complex
        reflection = next(
            i for i in involutions(fig1)
            if i.component_maps["v1"] == (-1, 0) and i.component_maps["v3"] == (1, 0)
            and all(e == f for e, f in i.edge_map.items())
        )

        self.assertEqual(str(reflection), "v1:c->-c")
        self.assertEqual(
            str(structure_check(fig1).involution),
            "e1->e2 e2->e1 e3->e4 e4->e3 v1:c->-c+1/2 v3:c->-c+1/2",
        )

    def test_every_candidate_has_order_two(self):
        fig1 = fixture("fig1").complex
        point = ComponentPoint("v1", Fraction(1, 8))
        for involution in involutions(fig1):
            with self.subTest(involution=str(involution)):
                self.assertEqual(involution.image(fig1, involution.image(fig1, point)), point)

    def test_theta_hyperelliptic_involution_swaps_vertices(self):
        theta = fixture("theta").complex
        involution = structure_check(theta).involution

        self.assertEqual(involution.vertex_map["v1"], "v2")
        self.assertTrue(all(involution.reversed.values()))
        self.assertEqual(involution.image(theta, EdgePoint("e2", Fraction(1, 3))), EdgePoint("e2", Fraction(2, 3)))

    def test_loop_reflection_has_tree_quotient(self):
        loop = fixture("loop").complex
        reflections = [i for i in involutions(loop) if i.reversed["e"]]

        self.assertEqual(len(reflections), 1)
        self.assertTrue(is_tree_quotient(loop, reflections[0]))
        self.assertEqual(quotient(loop, reflections[0]).number_of_edges(), 1)

    def test_identity_quotient_keeps_cycles(self):
        theta = fixture("theta").complex
        self.assertFalse(is_tree_quotient(theta, involutions(theta)[0]))


class TestStructureCheck(unittest.TestCase):

    def test_hyperelliptic_fixtures(self):
        for name in ("loop", "theta", "b4", "fig1"):
            with self.subTest(fixture=name):
                self.assertTrue(structure_check(fixture(name).complex).hyperelliptic)

    def test_k4_is_not_hyperelliptic(self):
        report = structure_check(fixture("k4").complex)

        self.assertFalse(report.hyperelliptic)
        self.assertIsNone(report.g12)
        self.assertTrue(report.failures)
        self.assertGreater(report.candidates, 1)

    def test_component_condition_is_reported(self):
        self.assertIn("vacuous", structure_check(fixture("fig1").complex).component_condition)

    def test_g12_of_fig1_is_two_x(self):
        fig1 = fixture("fig1")
        self.assertEqual(g12(fig1.complex), class_of(fig1.complex, fig1.divisor("D2x")))

    def test_g12_of_b4(self):
        b4 = fixture("b4")
        self.assertEqual(g12(b4.complex), class_of(b4.complex, b4.divisor("G")))

    def test_g12_needs_genus_two(self):
        with self.assertRaises(PreconditionError):
            g12(fixture("loop").complex)

    def test_brute_force_agrees(self):
        theta = fixture("theta").complex
        self.assertEqual(gonality_two_search(theta), g12(theta))
        self.assertIsNone(gonality_two_search(fixture("k4").complex))


class TestIota(unittest.TestCase):

    def test_fig1_conjugates(self):
        fig1 = fixture("fig1")
        points = fig1.points
        for first, second in (("p1", "q1"), ("p", "q"), ("p2", "q2"), ("p4", "q4"), ("x", "x")):
            with self.subTest(point=first):
                self.assertEqual(iota(fig1.complex, points[first]), points[second])

    def test_conjugate_pairs_lie_in_g12(self):
        fig1 = fixture("fig1")
        point = EdgePoint("e3", Fraction(1, 5))
        pair = Divisor.from_points([point, iota(fig1.complex, point)])
        self.assertTrue(is_equivalent(fig1.complex, pair, fig1.divisor("D2x")))

    def test_bare_genus_one_vertex(self):
        with self.assertRaises(InvalidPointError):
            iota(fixture("fig1").complex, VertexPoint("v1"))

    def test_not_hyperelliptic(self):
        with self.assertRaises(NotHyperellipticError):
            iota(fixture("k4").complex, VertexPoint("a"))


class TestDecompose(unittest.TestCase):

    def test_four_x_is_twice_the_g12(self):
        fig1 = fixture("fig1")
        decomposition = decompose(fig1.complex, fig1.divisor("D4x"))

        self.assertEqual(decomposition.rank, 2)
        self.assertEqual(decomposition.residual, Divisor())
        self.assertEqual(decomposition.fixed_point, VertexPoint("v2"))

    def test_reassembly_is_equivalent(self):
        theta = fixture("theta")
        decomposition = decompose(theta.complex, theta.divisor("P"))

        self.assertEqual(decomposition.rank, 0)
        self.assertEqual(decomposition.fixed_point, EdgePoint("e1", Fraction(1, 2)))
        self.assertTrue(is_equivalent(theta.complex, decomposition.reassemble(), theta.divisor("P")))

    def test_g12_plus_free_point(self):
        fig1 = fixture("fig1")
        divisor = fig1.divisor("W1") + Divisor({fig1.points["p4"]: 1})
        decomposition = decompose(fig1.complex, divisor)

        self.assertEqual(decomposition.rank, 1)
        self.assertEqual(decomposition.residual.degree, 1)
        self.assertTrue(is_equivalent(fig1.complex, decomposition.reassemble(), divisor))

    def test_degree_above_genus(self):
        theta = fixture("theta").complex
        with self.assertRaises(PreconditionError):
            decompose(theta, Divisor({VertexPoint("v1"): 3}))

    def test_not_hyperelliptic(self):
        k4 = fixture("k4")
        with self.assertRaises(NotHyperellipticError):
            decompose(k4.complex, k4.divisor("T"))


if __name__ == '__main__':
    unittest.main()
