"""
Divisors: finite integer combinations of points.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from src.model.points import Point, point_sort_key


class Divisor:
    """
    Immutable finitely supported map Point -> nonzero integer.

    Arithmetic returns new divisors; zero coefficients are dropped so that
    equality is equality of maps.
    """

    __slots__ = ('_items', '_hash')

    def __init__(self, coefficients: Optional[Mapping[Point, int]] = None):
        cleaned: Dict[Point, int] = {}
        for point, coefficient in (coefficients or {}).items():
            if not isinstance(coefficient, int) or isinstance(coefficient, bool):
                raise TypeError(f"coefficient at {point} must be an integer, got {coefficient!r}")
            if coefficient:
                cleaned[point] = cleaned.get(point, 0) + coefficient
        self._items: Tuple[Tuple[Point, int], ...] = tuple(
            sorted(((p, c) for p, c in cleaned.items() if c), key=lambda item: point_sort_key(item[0]))
        )
        self._hash = hash(self._items)

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> 'Divisor':
        """Build the effective divisor p_1 + ... + p_k (repetitions allowed)."""
        return cls(Counter(points))

    @classmethod
    def zero(cls) -> 'Divisor':
        return cls()

    # Mapping-like access
    def __getitem__(self, point: Point) -> int:
        for p, c in self._items:
            if p == point:
                return c
        return 0

    def items(self) -> Tuple[Tuple[Point, int], ...]:
        return self._items

    def support(self) -> Tuple[Point, ...]:
        return tuple(p for p, _ in self._items)

    def points(self) -> Iterator[Point]:
        """Iterate the positive part with multiplicity."""
        for point, coefficient in self._items:
            for _ in range(max(coefficient, 0)):
                yield point

    def as_dict(self) -> Dict[Point, int]:
        return dict(self._items)

    @property
    def degree(self) -> int:
        return sum(c for _, c in self._items)

    def is_effective(self) -> bool:
        return all(c >= 0 for _, c in self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __len__(self) -> int:
        return len(self._items)

    # Arithmetic
    def __add__(self, other: 'Divisor') -> 'Divisor':
        merged = Counter(self.as_dict())
        for point, coefficient in other.items():
            merged[point] += coefficient
        return Divisor(merged)

    def __neg__(self) -> 'Divisor':
        return Divisor({p: -c for p, c in self._items})

    def __sub__(self, other: 'Divisor') -> 'Divisor':
        return self + (-other)

    def __mul__(self, factor: int) -> 'Divisor':
        return Divisor({p: factor * c for p, c in self._items})

    __rmul__ = __mul__

    def __le__(self, other: 'Divisor') -> bool:
        """Containment: every coefficient of self is at most that of other."""
        return (other - self).is_effective()

    def cap(self, other: 'Divisor') -> 'Divisor':
        """Pointwise minimum of the two coefficient maps."""
        keys = set(self.support()) | set(other.support())
        return Divisor({p: min(self[p], other[p]) for p in keys})

    def cup(self, other: 'Divisor') -> 'Divisor':
        """Pointwise maximum of the two coefficient maps."""
        keys = set(self.support()) | set(other.support())
        return Divisor({p: max(self[p], other[p]) for p in keys})

    def restrict(self, predicate) -> 'Divisor':
        return Divisor({p: c for p, c in self._items if predicate(p)})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self._items:
            return "0"
        terms = []
        for point, coefficient in self._items:
            if coefficient == 1:
                terms.append(str(point))
            elif coefficient == -1:
                terms.append(f"-{point}")
            else:
                terms.append(f"{coefficient}*{point}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Divisor({self})"
