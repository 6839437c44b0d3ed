"""
Support refinements of the underlying metric graph and the chip state moved on them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from src.core.exceptions import InvalidPointError
from src.model.complex import MetrizedComplex
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, Point, VertexPoint, mod_one, point_sort_key

START = 0
STOP = 1


@dataclass(frozen=True)
class Segment:
    """A piece [start, stop] of an edge between two consecutive skeleton nodes."""

    index: int
    edge: str
    start: Fraction
    stop: Fraction
    ends: Tuple[Point, Point]

    @property
    def length(self) -> Fraction:
        return self.stop - self.start

    @property
    def is_loop(self) -> bool:
        return self.ends[START] == self.ends[STOP]


class Skeleton:
    """
    The model of the metric graph whose nodes are all complex vertices plus the
    given interior edge points. Every vertex, genus-1 or not, is a node
    ``VertexPoint(v)``.
    """

    def __init__(self, complex_: MetrizedComplex, points: Iterable[Point] = ()):
        self.complex = complex_
        cuts: Dict[str, set] = {}
        for point in points:
            if isinstance(point, EdgePoint):
                cuts.setdefault(point.edge, set()).add(point.offset)

        self.nodes: List[Point] = [VertexPoint(v.id) for v in complex_.vertices]
        self.segments: List[Segment] = []
        self.incidence: Dict[Point, List[Tuple[int, int]]] = {n: [] for n in self.nodes}

        for edge in complex_.edges:
            offsets = sorted(cuts.get(edge.id, ()))
            stops = [Fraction(0)] + offsets + [edge.length]
            for offset in offsets:
                node = EdgePoint(edge.id, offset)
                self.nodes.append(node)
                self.incidence[node] = []
            for start, stop in zip(stops, stops[1:]):
                segment = Segment(
                    index=len(self.segments),
                    edge=edge.id,
                    start=start,
                    stop=stop,
                    ends=(self.point_at(edge.id, start), self.point_at(edge.id, stop)),
                )
                self.segments.append(segment)
                self.incidence[segment.ends[START]].append((segment.index, START))
                self.incidence[segment.ends[STOP]].append((segment.index, STOP))

    def point_at(self, edge_id: str, offset: Fraction) -> Point:
        edge = self.complex.edge(edge_id)
        if offset == 0:
            return VertexPoint(edge.tail)
        if offset == edge.length:
            return VertexPoint(edge.head)
        return EdgePoint(edge_id, offset)

    def node_coordinate(self, segment: Segment, side: int) -> Optional[Fraction]:
        """Node of C_v where the segment end attaches, when that end is a genus-1 vertex."""
        edge = self.complex.edge(segment.edge)
        if side == START and segment.start == 0:
            return edge.tail_node
        if side == STOP and segment.stop == edge.length:
            return edge.head_node
        return None

    def genus_at(self, node: Point) -> int:
        if isinstance(node, VertexPoint):
            return self.complex.genus_of(node.vertex)
        return 0

    def walk(self, segment: Segment, side: int, distance: Fraction) -> Point:
        """The point reached by walking ``distance`` into the segment from the given end."""
        offset = segment.start + distance if side == START else segment.stop - distance
        return self.point_at(segment.edge, offset)

    @property
    def graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.nodes)
        for segment in self.segments:
            graph.add_edge(segment.ends[START], segment.ends[STOP], key=segment.index, length=segment.length)
        return graph

    def distances(self, source: Point) -> Dict[Point, Fraction]:
        return nx.single_source_dijkstra_path_length(self.graph, source, weight='length')


def base_node(complex_: MetrizedComplex, base: Point) -> Point:
    """The skeleton node a base point burns from: its vertex, or itself on an edge."""
    base = complex_.normalize_point(base, allow_genus_one_vertex=True)
    if isinstance(base, EdgePoint):
        return base
    return VertexPoint(base.vertex)


@dataclass
class ChipState:
    """
    Mutable working copy of a divisor during reduction.

    ``chips`` counts chips per graph point, a genus-1 vertex counting the degree
    of the divisor on its component; ``sums`` keeps the coordinate sum (mod 1)
    of each genus-1 component, which with the degree fixes the component class.
    """

    complex: MetrizedComplex
    chips: Counter = field(default_factory=Counter)
    sums: Dict[str, Fraction] = field(default_factory=dict)
    original: Divisor = field(default_factory=Divisor)

    @classmethod
    def from_divisor(cls, complex_: MetrizedComplex, divisor: Divisor) -> 'ChipState':
        divisor = complex_.normalize_divisor(divisor)
        state = cls(complex_, Counter(), {v.id: Fraction(0) for v in complex_.vertices if v.genus == 1}, divisor)
        for point, coefficient in divisor.items():
            if isinstance(point, EdgePoint):
                state.chips[point] += coefficient
            elif isinstance(point, VertexPoint):
                state.chips[point] += coefficient
            elif isinstance(point, ComponentPoint):
                state.chips[VertexPoint(point.vertex)] += coefficient
                state.sums[point.vertex] = mod_one(state.sums[point.vertex] + coefficient * point.coordinate)
            else:
                raise InvalidPointError(f"not a point: {point!r}")
        return state

    def copy(self) -> 'ChipState':
        return ChipState(self.complex, Counter(self.chips), dict(self.sums), self.original)

    def support_points(self) -> List[Point]:
        return [p for p, c in self.chips.items() if c and isinstance(p, EdgePoint)]

    def add_chip(self, node: Point, amount: int, coordinate: Optional[Fraction]) -> None:
        """Move ``amount`` chips onto a node; on a genus-1 vertex they sit at ``coordinate``."""
        self.chips[node] += amount
        if isinstance(node, VertexPoint) and node.vertex in self.sums:
            self.sums[node.vertex] = mod_one(self.sums[node.vertex] + amount * coordinate)

    def is_effective_at(self, node: Point) -> bool:
        """Whether the restriction to this point (or its component) is equivalent to an effective divisor."""
        count = self.chips.get(node, 0)
        if isinstance(node, VertexPoint) and node.vertex in self.sums:
            return count > 0 or (count == 0 and self.sums[node.vertex] == 0)
        return count >= 0

    def graph_part(self) -> Tuple[Tuple[Point, int], ...]:
        return tuple(sorted(((p, c) for p, c in self.chips.items() if c), key=lambda item: point_sort_key(item[0])))

    def class_key(self) -> Tuple:
        return (self.graph_part(), tuple(sorted(self.sums.items())))
