"""
Metrized complexes with genus-0 and genus-1 components.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from src.core.exceptions import ComplexValidationError, InvalidPointError
from src.core.logging import get_logger
from src.model.divisor import Divisor
from src.model.points import (
    ComponentPoint, EdgePoint, Point, RationalLike, VertexPoint, as_rational, mod_one,
)

logger = get_logger(__name__)

TAIL = 0
HEAD = 1


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0


@dataclass(frozen=True)
class Edge:
    """An edge from tail to head; node coordinates are set only at genus-1 ends."""

    id: str
    tail: str
    head: str
    length: Fraction
    tail_node: Optional[Fraction] = None
    head_node: Optional[Fraction] = None

    def endpoint(self, side: int) -> str:
        return self.tail if side == TAIL else self.head

    def node(self, side: int) -> Optional[Fraction]:
        return self.tail_node if side == TAIL else self.head_node

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class EdgeEnd:
    """One end of an edge, attached to a vertex (and a node when the vertex has genus 1)."""

    edge: str
    side: int


@dataclass(frozen=True)
class EdgeSpec:
    """Parsed edge description; nodes are (vertex, coordinate) pairs in source order."""

    id: str
    tail: str
    head: str
    length: RationalLike
    nodes: Tuple[Tuple[str, RationalLike], ...] = ()


@dataclass(frozen=True)
class ComplexSpec:
    """Parsed complex description consumed by build_complex."""

    name: str
    vertices: Tuple[Tuple[str, int], ...]
    edges: Tuple[EdgeSpec, ...]


@dataclass(frozen=True)
class MetrizedComplex:
    """
    A metric graph with a genus-0 or genus-1 component at each vertex.

    Genus-1 components are modeled as the circle group R/Z; a node is the
    coordinate where an edge end attaches.
    """

    name: str
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    _vertex_index: Dict[str, Vertex] = field(default=None, init=False, repr=False, compare=False)
    _edge_index: Dict[str, Edge] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_vertex_index', {v.id: v for v in self.vertices})
        object.__setattr__(self, '_edge_index', {e.id: e for e in self.edges})
        self._validate()

    def _validate(self):
        if not self.vertices:
            raise ComplexValidationError(f"complex {self.name} has no vertices")
        if len(self._vertex_index) != len(self.vertices):
            raise ComplexValidationError(f"complex {self.name} repeats a vertex id")
        if len(self._edge_index) != len(self.edges):
            raise ComplexValidationError(f"complex {self.name} repeats an edge id")
        overlap = set(self._vertex_index) & set(self._edge_index)
        if overlap:
            raise ComplexValidationError(f"ids used for both a vertex and an edge: {sorted(overlap)}")

        for vertex in self.vertices:
            if vertex.genus not in (0, 1):
                raise ComplexValidationError(
                    f"vertex {vertex.id} has genus {vertex.genus}; only genus 0 and 1 components are supported"
                )

        for edge in self.edges:
            for endpoint in (edge.tail, edge.head):
                if endpoint not in self._vertex_index:
                    raise ComplexValidationError(f"edge {edge.id} references undeclared vertex {endpoint}")
            if edge.length <= 0:
                raise ComplexValidationError(f"edge {edge.id} has nonpositive length {edge.length}")
            for side in (TAIL, HEAD):
                end_genus = self._vertex_index[edge.endpoint(side)].genus
                node = edge.node(side)
                if end_genus == 1 and node is None:
                    raise ComplexValidationError(
                        f"edge {edge.id} needs a node coordinate at genus-1 vertex {edge.endpoint(side)}"
                    )
                if end_genus == 0 and node is not None:
                    raise ComplexValidationError(
                        f"edge {edge.id} carries a node coordinate at genus-0 vertex {edge.endpoint(side)}"
                    )

        for vertex in self.vertices:
            if vertex.genus == 1:
                nodes = [self.node(end) for end in self.ends_at(vertex.id)]
                if len(nodes) != len(set(nodes)):
                    raise ComplexValidationError(f"duplicate node coordinate on component {vertex.id}")

        if not nx.is_connected(self.skeleton):
            raise ComplexValidationError(f"complex {self.name} is disconnected")

    # Lookups
    def vertex(self, vertex_id: str) -> Vertex:
        try:
            return self._vertex_index[vertex_id]
        except KeyError:
            raise InvalidPointError(f"unknown vertex {vertex_id}")

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise InvalidPointError(f"unknown edge {edge_id}")

    def has_vertex(self, vertex_id: str) -> bool:
        return vertex_id in self._vertex_index

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edge_index

    def genus_of(self, vertex_id: str) -> int:
        return self.vertex(vertex_id).genus

    @cached_property
    def _ends_by_vertex(self) -> Dict[str, Tuple[EdgeEnd, ...]]:
        ends: Dict[str, List[EdgeEnd]] = {v.id: [] for v in self.vertices}
        for edge in self.edges:
            ends[edge.tail].append(EdgeEnd(edge.id, TAIL))
            ends[edge.head].append(EdgeEnd(edge.id, HEAD))
        return {v: tuple(e) for v, e in ends.items()}

    def ends_at(self, vertex_id: str) -> Tuple[EdgeEnd, ...]:
        return self._ends_by_vertex[vertex_id]

    def valence(self, vertex_id: str) -> int:
        return len(self.ends_at(vertex_id))

    def node(self, end: EdgeEnd) -> Optional[Fraction]:
        return self.edge(end.edge).node(end.side)

    @property
    def base_vertex(self) -> str:
        """The global base point used for canonical class representatives."""
        return self.vertices[0].id

    @cached_property
    def skeleton(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for vertex in self.vertices:
            graph.add_node(vertex.id, genus=vertex.genus)
        for rank, edge in enumerate(self.edges):
            graph.add_edge(edge.tail, edge.head, key=edge.id, length=edge.length, rank=rank)
        return graph

    @property
    def first_betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    @cached_property
    def spanning_tree_edges(self) -> Tuple[str, ...]:
        chosen = nx.minimum_spanning_edges(self.skeleton, algorithm='kruskal', weight='rank', keys=True, data=False)
        return tuple(sorted(key for _, _, key in chosen))

    @property
    def non_tree_edges(self) -> Tuple[str, ...]:
        tree = set(self.spanning_tree_edges)
        return tuple(e.id for e in self.edges if e.id not in tree)

    # Points
    def normalize_point(self, point: Point, allow_genus_one_vertex: bool = False) -> Point:
        """
        Validate a point against the complex and return its normal form.

        A component point on a rational component is the vertex point of that
        vertex. A bare vertex point on a genus-1 vertex names no point of C_v and
        is only admitted where a base vertex is meant.
        """
        if isinstance(point, EdgePoint):
            edge = self.edge(point.edge)
            if not 0 < point.offset < edge.length:
                raise InvalidPointError(f"offset {point.offset} is not interior to edge {edge.id}")
            return point
        if isinstance(point, ComponentPoint):
            if self.genus_of(point.vertex) == 0:
                return VertexPoint(point.vertex)
            return point
        if isinstance(point, VertexPoint):
            if self.genus_of(point.vertex) == 1 and not allow_genus_one_vertex:
                raise InvalidPointError(
                    f"vertex {point.vertex} has a genus-1 component; give a component coordinate"
                )
            return point
        raise InvalidPointError(f"not a point: {point!r}")

    def normalize_divisor(self, divisor: Divisor) -> Divisor:
        merged: Counter = Counter()
        for point, coefficient in divisor.items():
            merged[self.normalize_point(point)] += coefficient
        return Divisor(merged)

    def vertex_of(self, point: Point) -> Optional[str]:
        """The vertex a point sits at, or None for interior edge points."""
        if isinstance(point, (VertexPoint, ComponentPoint)):
            return point.vertex
        return None

    def free_component_coordinate(self, vertex_id: str, avoid: Iterable[Fraction] = ()) -> Fraction:
        """Smallest-denominator coordinate on C_v avoiding its nodes and the given coordinates."""
        taken = {self.node(end) for end in self.ends_at(vertex_id)} | {mod_one(c) for c in avoid}
        denominator = 2
        while True:
            for numerator in range(1, denominator):
                candidate = Fraction(numerator, denominator)
                if candidate not in taken:
                    return candidate
            denominator += 1


def build_complex(spec: ComplexSpec) -> MetrizedComplex:
    """
    Build and validate a complex from its parsed description.

    Raises:
        ComplexValidationError: disconnected graph, nonpositive length, genus
            outside {0, 1}, missing or duplicate node coordinates
    """
    vertices = []
    for vertex_id, vertex_genus in spec.vertices:
        if vertex_genus not in (0, 1):
            raise ComplexValidationError(
                f"vertex {vertex_id} has genus {vertex_genus}; only genus 0 and 1 components are supported"
            )
        vertices.append(Vertex(vertex_id, vertex_genus))
    genera = {v.id: v.genus for v in vertices}

    edges = []
    for edge_spec in spec.edges:
        length = as_rational(edge_spec.length)
        nodes: Dict[int, Fraction] = {}
        for vertex_id, coordinate in edge_spec.nodes:
            if vertex_id == edge_spec.tail and TAIL not in nodes:
                side = TAIL
            elif vertex_id == edge_spec.head and HEAD not in nodes:
                side = HEAD
            else:
                raise ComplexValidationError(f"edge {edge_spec.id} has no free end at {vertex_id}")
            if genera.get(vertex_id) == 0:
                logger.warning(f"node coordinate for edge {edge_spec.id} at genus-0 vertex {vertex_id} has no effect")
                continue
            nodes[side] = mod_one(coordinate)
        edges.append(Edge(
            id=edge_spec.id,
            tail=edge_spec.tail,
            head=edge_spec.head,
            length=length,
            tail_node=nodes.get(TAIL),
            head_node=nodes.get(HEAD),
        ))

    complex_ = MetrizedComplex(spec.name, tuple(vertices), tuple(edges))
    logger.debug(f"built complex {complex_.name}: h={complex_.first_betti}, g={genus(complex_)}")
    return complex_


def genus(complex_: MetrizedComplex) -> int:
    """Total genus g = h + sum of component genera."""
    return complex_.first_betti + sum(v.genus for v in complex_.vertices)


def canonical_divisor(complex_: MetrizedComplex) -> Divisor:
    """
    The canonical representative: deg(v) - 2 chips at each rational vertex, and
    the sum of the nodes on each genus-1 component (whose own canonical class is trivial).
    """
    coefficients: Counter = Counter()
    for vertex in complex_.vertices:
        if vertex.genus == 0:
            coefficients[VertexPoint(vertex.id)] += complex_.valence(vertex.id) - 2
        else:
            for end in complex_.ends_at(vertex.id):
                coefficients[ComponentPoint(vertex.id, complex_.node(end))] += 1
    return Divisor(coefficients)


def refine_with_map(
    complex_: MetrizedComplex,
    points: Sequence[EdgePoint],
) -> Tuple[MetrizedComplex, Callable[[Point], Point]]:
    """
    Subdivide edges at the given interior points.

    Returns the refined complex, whose new vertices are genus-0 and named
    ``edge@offset``, and a map transporting points of the original complex.
    """
    cuts: Dict[str, List[Fraction]] = {}
    for point in points:
        if not isinstance(point, EdgePoint):
            raise ComplexValidationError(f"can only refine at edge points, got {point}")
        edge = complex_.edge(point.edge)
        if not 0 < point.offset < edge.length:
            raise ComplexValidationError(f"offset {point.offset} outside edge {edge.id}")
        bucket = cuts.setdefault(edge.id, [])
        if point.offset in bucket:
            raise ComplexValidationError(f"duplicate refinement point {point}")
        bucket.append(point.offset)

    vertices = list(complex_.vertices)
    edges: List[Edge] = []
    pieces: Dict[str, List[Tuple[Fraction, Fraction, str]]] = {}

    for edge in complex_.edges:
        offsets = sorted(cuts.get(edge.id, []))
        if not offsets:
            edges.append(edge)
            pieces[edge.id] = [(Fraction(0), edge.length, edge.id)]
            continue
        new_ids = [f"{edge.id}@{o}" for o in offsets]
        for new_id in new_ids:
            if complex_.has_vertex(new_id):
                raise ComplexValidationError(f"refinement vertex id {new_id} already in use")
            vertices.append(Vertex(new_id, 0))
        stops = [Fraction(0)] + offsets + [edge.length]
        ends = [edge.tail] + new_ids + [edge.head]
        pieces[edge.id] = []
        for index in range(len(stops) - 1):
            piece_id = f"{edge.id}.{index}"
            edges.append(Edge(
                id=piece_id,
                tail=ends[index],
                head=ends[index + 1],
                length=stops[index + 1] - stops[index],
                tail_node=edge.tail_node if index == 0 else None,
                head_node=edge.head_node if index == len(stops) - 2 else None,
            ))
            pieces[edge.id].append((stops[index], stops[index + 1], piece_id))

    refined = MetrizedComplex(complex_.name, tuple(vertices), tuple(edges))

    def transport(point: Point) -> Point:
        if not isinstance(point, EdgePoint):
            return point
        for start, stop, piece_id in pieces[point.edge]:
            if point.offset == stop and stop != complex_.edge(point.edge).length:
                return VertexPoint(f"{point.edge}@{stop}")
            if start < point.offset < stop:
                return EdgePoint(piece_id, point.offset - start)
        raise InvalidPointError(f"point {point} is not on edge {point.edge}")

    return refined, transport


def refine(complex_: MetrizedComplex, points: Sequence[EdgePoint]) -> MetrizedComplex:
    """Subdivide edges at the given interior points (new genus-0 vertices)."""
    refined, _ = refine_with_map(complex_, points)
    return refined


def transport_divisor(transport: Callable[[Point], Point], divisor: Divisor) -> Divisor:
    moved: Counter = Counter()
    for point, coefficient in divisor.items():
        moved[transport(point)] += coefficient
    return Divisor(moved)
