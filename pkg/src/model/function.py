"""
Rational functions on a metrized complex: certificates of linear equivalence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple

from src.core.exceptions import IntegralityError, InvalidPointError
from src.model.complex import HEAD, TAIL, MetrizedComplex
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, VertexPoint, as_rational, mod_one

Breaks = Tuple[Tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class ComplexFunction:
    """
    Continuous piecewise-linear graph part plus principal component parts.

    ``vertex_values`` fixes f at every vertex, ``edge_breaks`` lists interior
    break points (offset, value) per edge, and ``component_parts`` gives for a
    genus-1 vertex the divisor of a rational function on C_v (degree 0,
    coordinate sum 0 mod 1).
    """

    vertex_values: Mapping[str, Fraction]
    edge_breaks: Mapping[str, Breaks] = field(default_factory=dict)
    component_parts: Mapping[str, Tuple[Tuple[Fraction, int], ...]] = field(default_factory=dict)

    @classmethod
    def constant(cls, complex_: MetrizedComplex, value=0) -> 'ComplexFunction':
        return cls({v.id: as_rational(value) for v in complex_.vertices})

    @classmethod
    def tent(cls, complex_: MetrizedComplex, edge_id: str, rise: int, fall: int) -> 'ComplexFunction':
        """
        Zero on all vertices, rising with slope ``rise`` from the tail of the edge
        and falling with slope ``fall`` into its head.
        """
        if rise <= 0 or fall <= 0:
            raise IntegralityError("tent slopes must be positive integers")
        edge = complex_.edge(edge_id)
        peak = edge.length * Fraction(fall, rise + fall)
        return cls(
            {v.id: Fraction(0) for v in complex_.vertices},
            {edge_id: ((peak, rise * peak),)},
        )

    def value_at(self, complex_: MetrizedComplex, edge_id: str, offset: Fraction) -> Fraction:
        profile = self._profile(complex_, edge_id)
        for (x0, y0), (x1, y1) in zip(profile, profile[1:]):
            if x0 <= offset <= x1:
                return y0 + (y1 - y0) * (offset - x0) / (x1 - x0)
        raise InvalidPointError(f"offset {offset} outside edge {edge_id}")

    def _profile(self, complex_: MetrizedComplex, edge_id: str) -> List[Tuple[Fraction, Fraction]]:
        edge = complex_.edge(edge_id)
        try:
            start = as_rational(self.vertex_values[edge.tail])
            stop = as_rational(self.vertex_values[edge.head])
        except KeyError as missing:
            raise InvalidPointError(f"function has no value at vertex {missing.args[0]}")
        inner = [(as_rational(o), as_rational(v)) for o, v in self.edge_breaks.get(edge_id, ())]
        return [(Fraction(0), start)] + sorted(inner) + [(edge.length, stop)]

    def slopes(self, complex_: MetrizedComplex, edge_id: str) -> List[Tuple[Fraction, Fraction, int]]:
        """Linear pieces (start, stop, slope) along the edge; slopes must be integers."""
        profile = self._profile(complex_, edge_id)
        pieces = []
        for (x0, y0), (x1, y1) in zip(profile, profile[1:]):
            if not x0 < x1:
                raise InvalidPointError(f"break points on edge {edge_id} must be interior and distinct")
            slope = (y1 - y0) / (x1 - x0)
            if slope.denominator != 1:
                raise IntegralityError(f"slope {slope} on edge {edge_id} between {x0} and {x1} is not an integer")
            pieces.append((x0, x1, int(slope)))
        return pieces

    def __neg__(self) -> 'ComplexFunction':
        return ComplexFunction(
            {v: -as_rational(x) for v, x in self.vertex_values.items()},
            {e: tuple((o, -as_rational(y)) for o, y in b) for e, b in self.edge_breaks.items()},
            {v: tuple((c, -k) for c, k in part) for v, part in self.component_parts.items()},
        )

    def add(self, complex_: MetrizedComplex, other: 'ComplexFunction') -> 'ComplexFunction':
        """Pointwise sum; break points are merged per edge."""
        values = {
            v.id: as_rational(self.vertex_values.get(v.id, 0)) + as_rational(other.vertex_values.get(v.id, 0))
            for v in complex_.vertices
        }
        breaks: Dict[str, Breaks] = {}
        for edge in complex_.edges:
            offsets = sorted(
                {as_rational(o) for o, _ in self.edge_breaks.get(edge.id, ())}
                | {as_rational(o) for o, _ in other.edge_breaks.get(edge.id, ())}
            )
            if offsets:
                breaks[edge.id] = tuple(
                    (o, self.value_at(complex_, edge.id, o) + other.value_at(complex_, edge.id, o))
                    for o in offsets
                )
        parts: Dict[str, Tuple[Tuple[Fraction, int], ...]] = {}
        for vertex_id in set(self.component_parts) | set(other.component_parts):
            merged: Counter = Counter()
            for c, k in tuple(self.component_parts.get(vertex_id, ())) + tuple(other.component_parts.get(vertex_id, ())):
                merged[mod_one(c)] += k
            parts[vertex_id] = tuple(sorted((c, k) for c, k in merged.items() if k))
        return ComplexFunction(values, breaks, parts)


def principal_divisor(complex_: MetrizedComplex, f: ComplexFunction) -> Divisor:
    """
    div(f): minus the sum of outgoing slopes at each point, plus the component parts.

    Raises:
        IntegralityError: a slope of f is not an integer
        InvalidPointError: a component part is not principal
    """
    coefficients: Counter = Counter()

    for edge in complex_.edges:
        pieces = f.slopes(complex_, edge.id)
        for (_, _, left), (x, _, right) in zip(pieces, pieces[1:]):
            # outgoing slopes at x are +right forward and -left backward
            if left != right:
                coefficients[EdgePoint(edge.id, x)] += left - right
        outgoing = {TAIL: pieces[0][2], HEAD: -pieces[-1][2]}
        for side in (TAIL, HEAD):
            vertex_id = edge.endpoint(side)
            if complex_.genus_of(vertex_id) == 1:
                coefficients[ComponentPoint(vertex_id, edge.node(side))] -= outgoing[side]
            else:
                coefficients[VertexPoint(vertex_id)] -= outgoing[side]

    for vertex_id, part in f.component_parts.items():
        if complex_.genus_of(vertex_id) != 1:
            raise InvalidPointError(f"component part given for rational component {vertex_id}")
        degree = sum(k for _, k in part)
        total = mod_one(sum((as_rational(c) * k for c, k in part), Fraction(0)))
        if degree != 0 or total != 0:
            raise InvalidPointError(f"component part on {vertex_id} is not principal")
        for c, k in part:
            coefficients[ComponentPoint(vertex_id, c)] += k

    return Divisor(coefficients)


def apply_function(complex_: MetrizedComplex, divisor: Divisor, f: ComplexFunction) -> Divisor:
    """Return D + div(f), a divisor linearly equivalent to D."""
    return complex_.normalize_divisor(divisor) + principal_divisor(complex_, f)
