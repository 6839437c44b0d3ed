"""
Points of a metrized complex and exact rational helpers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, a Fraction or an 'a/b' literal to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def mod_one(value: RationalLike) -> Fraction:
    """Reduce a rational to its representative in [0, 1)."""
    value = as_rational(value)
    return value - (value.numerator // value.denominator)


def format_rational(value: Fraction) -> str:
    """Serialize a rational as 'a/b' (or 'a' when integral)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class VertexPoint:
    """A model vertex; on a rational component it stands for every point of C_v."""

    vertex: str

    def sort_key(self) -> Tuple:
        return (0, self.vertex, Fraction(0))

    def __str__(self) -> str:
        return self.vertex


@dataclass(frozen=True)
class EdgePoint:
    """An interior point of an edge, measured from the edge's first endpoint."""

    edge: str
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'offset', as_rational(self.offset))

    def sort_key(self) -> Tuple:
        return (1, self.edge, self.offset)

    def __str__(self) -> str:
        return f"{self.edge}({format_rational(self.offset)})"


@dataclass(frozen=True)
class ComponentPoint:
    """A point of the component C_v, given by its circle coordinate in [0, 1)."""

    vertex: str
    coordinate: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'coordinate', mod_one(self.coordinate))

    def sort_key(self) -> Tuple:
        return (2, self.vertex, self.coordinate)

    def __str__(self) -> str:
        return f"{self.vertex}[{format_rational(self.coordinate)}]"


Point = Union[VertexPoint, EdgePoint, ComponentPoint]


def point_sort_key(point: Point) -> Tuple:
    return point.sort_key()


def is_graph_point(point: Point) -> bool:
    """True for points of the underlying metric graph (not on a component curve)."""
    return isinstance(point, (VertexPoint, EdgePoint))
