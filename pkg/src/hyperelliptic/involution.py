"""
Order-two symmetries of a metrized complex and their quotients.

Automorphisms are found on the incidence graph (one node per vertex and per
edge), which turns every symmetry of the midpoint-refined model into a node
permutation that networkx can enumerate. Loops carry no orientation in the
incidence graph, so each loop orbit is tried both unreflected and reflected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Mapping, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher, categorical_node_match

from src.core.exceptions import InvalidPointError
from src.core.logging import get_logger
from src.model.complex import HEAD, TAIL, EdgeEnd, MetrizedComplex
from src.model.points import ComponentPoint, EdgePoint, Point, VertexPoint, format_rational, mod_one

logger = get_logger(__name__)

# (sign, shift): the component map c -> sign * c + shift
ComponentMap = Tuple[int, Fraction]

# order-two maps of a circle without nodes, up to conjugation
FREE_COMPONENT_MAPS: Tuple[ComponentMap, ...] = ((1, Fraction(0)), (1, Fraction(1, 2)), (-1, Fraction(0)))


@dataclass(frozen=True)
class Involution:
    """
    A length- and genus-preserving symmetry of order at most two.

    ``reversed`` says whether an edge is carried onto its image with the ends
    exchanged; for loops it records a reflection t -> L - t.
    """

    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    reversed: Mapping[str, bool]
    component_maps: Mapping[str, ComponentMap]

    @property
    def is_identity(self) -> bool:
        return (
            all(v == w for v, w in self.vertex_map.items())
            and all(e == f for e, f in self.edge_map.items())
            and not any(self.reversed.values())
            and all(m == (1, 0) for m in self.component_maps.values())
        )

    def fixed_vertices(self) -> List[str]:
        return sorted(v for v, w in self.vertex_map.items() if v == w)

    def fixed_edges(self) -> List[str]:
        return sorted(e for e, f in self.edge_map.items() if e == f)

    def map_end(self, end: EdgeEnd) -> EdgeEnd:
        side = 1 - end.side if self.reversed[end.edge] else end.side
        return EdgeEnd(self.edge_map[end.edge], side)

    def image(self, complex_: MetrizedComplex, point: Point) -> Point:
        if isinstance(point, EdgePoint):
            target = self.edge_map[point.edge]
            if self.reversed[point.edge]:
                return EdgePoint(target, complex_.edge(target).length - point.offset)
            return EdgePoint(target, point.offset)
        if isinstance(point, ComponentPoint) and point.vertex in self.component_maps:
            sign, shift = self.component_maps[point.vertex]
            return ComponentPoint(self.vertex_map[point.vertex], sign * point.coordinate + shift)
        if isinstance(point, (VertexPoint, ComponentPoint)):
            if complex_.genus_of(point.vertex) == 1:
                raise InvalidPointError(f"{point} names no point of the genus-1 component {point.vertex}")
            return VertexPoint(self.vertex_map[point.vertex])
        raise InvalidPointError(f"not a point: {point!r}")

    def sort_key(self) -> Tuple:
        return (
            not self.is_identity,
            tuple(sorted(self.vertex_map.items())),
            tuple(sorted(self.edge_map.items())),
            tuple(sorted(self.reversed.items())),
            tuple(sorted(self.component_maps.items())),
        )

    def __str__(self) -> str:
        moved = [f"{v}->{w}" for v, w in sorted(self.vertex_map.items()) if v != w]
        edges = [
            f"{e}->{f}{'~' if self.reversed[e] else ''}"
            for e, f in sorted(self.edge_map.items())
            if e != f or self.reversed[e]
        ]
        components = [
            f"{v}:c->{'-c' if sign < 0 else 'c'}{'+' + format_rational(shift) if shift else ''}"
            for v, (sign, shift) in sorted(self.component_maps.items())
            if (sign, shift) != (1, 0)
        ]
        return "id" if self.is_identity else " ".join(moved + edges + components)


def incidence_graph(complex_: MetrizedComplex) -> nx.Graph:
    graph = nx.Graph()
    for vertex in complex_.vertices:
        graph.add_node(('v', vertex.id), kind='vertex', genus=vertex.genus, length=None, loop=False)
    for edge in complex_.edges:
        graph.add_node(('e', edge.id), kind='edge', genus=0, length=edge.length, loop=edge.is_loop)
        graph.add_edge(('e', edge.id), ('v', edge.tail))
        graph.add_edge(('e', edge.id), ('v', edge.head))
    return graph


def _component_maps(
    complex_: MetrizedComplex, vertex_id: str, ends: Mapping[EdgeEnd, EdgeEnd]
) -> List[ComponentMap]:
    """Every affine map of circles carrying each node to the node of the image end, translations first."""
    pairs = [(complex_.node(end), complex_.node(ends[end])) for end in complex_.ends_at(vertex_id)]
    if not pairs:
        return list(FREE_COMPONENT_MAPS)
    found = []
    for sign in (1, -1):
        shifts = {mod_one(image - sign * node) for node, image in pairs}
        if len(shifts) == 1:
            found.append((sign, shifts.pop()))
    return found


def _order_two(complex_: MetrizedComplex, maps: Mapping[str, ComponentMap], vertex_map: Mapping[str, str]) -> bool:
    for vertex_id, (sign, shift) in maps.items():
        back_sign, back_shift = maps[vertex_map[vertex_id]]
        # c -> sign*c + shift -> back_sign*(sign*c + shift) + back_shift
        if back_sign * sign != 1 or mod_one(back_sign * shift + back_shift) != 0:
            return False
    return True


def _candidates(complex_: MetrizedComplex, automorphism: Mapping) -> Iterator[Involution]:
    vertex_map = {v: w for (kind, v), (_, w) in automorphism.items() if kind == 'v'}
    edge_map = {e: f for (kind, e), (_, f) in automorphism.items() if kind == 'e'}
    if any(edge_map[edge_map[e]] != e for e in edge_map) or any(vertex_map[vertex_map[v]] != v for v in vertex_map):
        return

    orientation: Dict[str, bool] = {}
    loop_orbits: List[Tuple[str, ...]] = []
    for edge in complex_.edges:
        if edge.is_loop:
            image = edge_map[edge.id]
            if edge.id <= image:
                loop_orbits.append(tuple(sorted({edge.id, image})))
            continue
        target = complex_.edge(edge_map[edge.id])
        orientation[edge.id] = vertex_map[edge.tail] == target.head and vertex_map[edge.head] == target.tail

    for flips in product((False, True), repeat=len(loop_orbits)):
        reversed_ = dict(orientation)
        for orbit, flip in zip(loop_orbits, flips):
            for edge_id in orbit:
                reversed_[edge_id] = flip
        involution = Involution(vertex_map, edge_map, reversed_, {})
        ends = {
            end: involution.map_end(end)
            for vertex in complex_.vertices
            for end in complex_.ends_at(vertex.id)
        }
        elliptic = [vertex.id for vertex in complex_.vertices if vertex.genus == 1]
        choices = [_component_maps(complex_, vertex_id, ends) for vertex_id in elliptic]
        for combination in product(*choices):
            maps: Dict[str, ComponentMap] = dict(zip(elliptic, combination))
            if _order_two(complex_, maps, vertex_map):
                yield Involution(vertex_map, edge_map, reversed_, maps)


def involutions(complex_: MetrizedComplex) -> List[Involution]:
    """All symmetries of order at most two, identity first, in a deterministic order."""
    graph = incidence_graph(complex_)
    matcher = GraphMatcher(
        graph,
        graph,
        node_match=categorical_node_match(['kind', 'genus', 'length', 'loop'], [None, 0, None, False]),
    )
    found: Dict[Tuple, Involution] = {}
    for automorphism in matcher.isomorphisms_iter():
        for involution in _candidates(complex_, automorphism):
            found.setdefault(involution.sort_key(), involution)
    result = [found[key] for key in sorted(found)]
    logger.debug(f"{complex_.name}: {len(result)} involutions")
    return result


def quotient(complex_: MetrizedComplex, involution: Involution) -> nx.MultiGraph:
    """
    The quotient of the midpoint-refined model: one node per orbit of vertices
    and of edge midpoints, one edge per orbit of half-edges.
    """
    def vertex_orbit(vertex_id: str) -> Tuple:
        return ('v',) + tuple(sorted({vertex_id, involution.vertex_map[vertex_id]}))

    def midpoint_orbit(edge_id: str) -> Tuple:
        return ('m',) + tuple(sorted({edge_id, involution.edge_map[edge_id]}))

    graph = nx.MultiGraph()
    for vertex in complex_.vertices:
        graph.add_node(vertex_orbit(vertex.id))
    seen = set()
    for edge in complex_.edges:
        graph.add_node(midpoint_orbit(edge.id))
        for side in (TAIL, HEAD):
            end = EdgeEnd(edge.id, side)
            image = involution.map_end(end)
            orbit = tuple(sorted({(end.edge, end.side), (image.edge, image.side)}))
            if orbit in seen:
                continue
            seen.add(orbit)
            graph.add_edge(vertex_orbit(edge.endpoint(side)), midpoint_orbit(edge.id), key=orbit)
    return graph


def is_tree_quotient(complex_: MetrizedComplex, involution: Involution) -> bool:
    graph = quotient(complex_, involution)
    return nx.is_connected(graph) and graph.number_of_edges() == graph.number_of_nodes() - 1
