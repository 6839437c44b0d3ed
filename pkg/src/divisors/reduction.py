"""
Reduced divisors and the questions they answer: equivalence, effectivity, rigidity.

Reduction at a base point q runs in three phases:

1. chips are pulled up from q along level sets of the distance to q until the
   divisor is effective away from q;
2. the unburnt part of Dhar's burn is fired until everything burns;
3. the class left on the component of q is written in normal form at q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from src.core.exceptions import NotEffectiveError
from src.core.logging import get_logger
from src.divisors.burning import (
    Move, apply_moves, build_skeleton, burn_state, check_effective_away,
)
from src.divisors.skeleton import START, STOP, ChipState, Skeleton, base_node
from src.model.complex import MetrizedComplex
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, Point, VertexPoint, mod_one

logger = get_logger(__name__)


def _levels(skeleton: Skeleton, distance: Dict[Point, Fraction]) -> List[Fraction]:
    levels = set(distance.values())
    for segment in skeleton.segments:
        a, b = (distance[end] for end in segment.ends)
        if abs(a - b) < segment.length:
            levels.add((a + b + segment.length) / 2)
    return sorted(levels)


def _pull_up(skeleton: Skeleton, state: ChipState, base: Point) -> bool:
    """
    Fire the ball of radius t around the base by R - t, where R is the largest
    distance of a deficient node and t the next level below it. Every point at
    distance t sends one chip per rising direction out to distance R.

    Returns False when nothing is deficient.
    """
    distance = skeleton.distances(base)
    deficient = [n for n in skeleton.nodes if n != base and not state.is_effective_at(n)]
    if not deficient:
        return False
    top = max(distance[n] for n in deficient)
    lower = max(level for level in _levels(skeleton, distance) if level < top)
    epsilon = top - lower

    moves = []
    for segment in skeleton.segments:
        for side in (START, STOP):
            near, far = distance[segment.ends[side]], distance[segment.ends[1 - side]]
            if not far + segment.length > near:
                continue
            rise = min(segment.length, (far + segment.length - near) / 2)
            if near == lower:
                start = Fraction(0)
            elif near < lower < near + rise:
                start = lower - near
            else:
                continue
            stop = start + epsilon
            moves.append(Move(
                source=skeleton.walk(segment, side, start),
                target=skeleton.walk(segment, side, stop),
                leaving_node=skeleton.node_coordinate(segment, side) if start == 0 else None,
                arriving_node=skeleton.node_coordinate(segment, 1 - side) if stop == segment.length else None,
            ))
    apply_moves(state, tuple(moves))
    return True


def reduced_state(complex_: MetrizedComplex, divisor: Divisor, base: Point) -> ChipState:
    """Phases one and two: the chip state of the reduced divisor at the base node."""
    node = base_node(complex_, base)
    state = ChipState.from_divisor(complex_, divisor)

    rounds = 0
    while _pull_up(build_skeleton(complex_, state, node), state, node):
        rounds += 1

    while True:
        skeleton = build_skeleton(complex_, state, node)
        check_effective_away(skeleton, state, node)
        result = burn_state(skeleton, state, node)
        if result.is_reduced:
            break
        apply_moves(state, result.moves)
        rounds += 1

    logger.debug(f"reduced at {node} after {rounds} firing rounds")
    return state


def _component_part(state: ChipState, vertex_id: str, base: Optional[ComponentPoint]) -> Divisor:
    degree = state.chips.get(VertexPoint(vertex_id), 0)
    total = state.sums[vertex_id]
    if base is not None and base.vertex == vertex_id:
        if mod_one(degree * base.coordinate) == total:
            return Divisor({base: degree})
        rest = ComponentPoint(vertex_id, total - (degree - 1) * base.coordinate)
        return Divisor({base: degree - 1}) + Divisor({rest: 1})

    original = state.original.restrict(
        lambda p: isinstance(p, ComponentPoint) and p.vertex == vertex_id
    )
    original_total = mod_one(sum((p.coordinate * c for p, c in original.items()), Fraction(0)))
    if original.degree == degree and original_total == total and original.is_effective():
        return original
    if degree == 0 and total == 0:
        return Divisor()
    return Divisor({ComponentPoint(vertex_id, 0): degree - 1}) + Divisor({ComponentPoint(vertex_id, total): 1})


def materialize(state: ChipState, base: Optional[Point] = None) -> Divisor:
    """Turn a chip state back into a divisor, writing each genus-1 class in normal form."""
    base_component = base if isinstance(base, ComponentPoint) else None
    coefficients: Dict[Point, int] = {}
    for point, count in state.chips.items():
        if count and not (isinstance(point, VertexPoint) and point.vertex in state.sums):
            coefficients[point] = count
    divisor = Divisor(coefficients)
    for vertex_id in state.sums:
        divisor = divisor + _component_part(state, vertex_id, base_component)
    return divisor


def reduce_at(complex_: MetrizedComplex, divisor: Divisor, base: Point) -> Divisor:
    """
    The reduced divisor equivalent to ``divisor`` at ``base``.

    A bare vertex point on a genus-1 vertex is accepted as a base; the class on
    that component is then written in the normal form (d-1)*v[0] + v[s].
    """
    base = complex_.normalize_point(base, allow_genus_one_vertex=True)
    return materialize(reduced_state(complex_, divisor, base), base)


def global_base(complex_: MetrizedComplex) -> Point:
    return VertexPoint(complex_.base_vertex)


@dataclass(frozen=True)
class DivisorClass:
    """A linear equivalence class, keyed by the reduced state at the global base."""

    complex: MetrizedComplex
    representative: Divisor
    key: Tuple
    degree: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.complex is other.complex and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return f"[{self.representative}]"


def class_of(complex_: MetrizedComplex, divisor: Divisor) -> DivisorClass:
    divisor = complex_.normalize_divisor(divisor)
    state = reduced_state(complex_, divisor, global_base(complex_))
    return DivisorClass(complex_, divisor, (divisor.degree,) + state.class_key(), divisor.degree)


def is_equivalent(complex_: MetrizedComplex, first: Divisor, second: Divisor) -> bool:
    first = complex_.normalize_divisor(first)
    second = complex_.normalize_divisor(second)
    if first.degree != second.degree:
        return False
    return class_of(complex_, first).key == class_of(complex_, second).key


def _base_is_effective(state: ChipState, base: Point) -> bool:
    return state.is_effective_at(base)


def effective_representative(complex_: MetrizedComplex, divisor: Divisor) -> Optional[Divisor]:
    """An effective divisor equivalent to ``divisor``, or None when there is none."""
    base = global_base(complex_)
    state = reduced_state(complex_, divisor, base)
    if not _base_is_effective(state, base):
        return None
    return materialize(state)


def is_effective_class(complex_: MetrizedComplex, divisor: Divisor) -> bool:
    base = global_base(complex_)
    return _base_is_effective(reduced_state(complex_, divisor, base), base)


def _rigidity_bases(skeleton: Skeleton) -> List[Point]:
    bases: List[Point] = list(skeleton.nodes)
    for segment in skeleton.segments:
        bases.append(EdgePoint(segment.edge, (segment.start + segment.stop) / 2))
    return bases


def is_rigid(complex_: MetrizedComplex, divisor: Divisor) -> bool:
    """
    Whether the effective divisor is the only member of its linear system.

    It is rigid iff it has degree at most one on every genus-1 component and the
    burn from every node and every segment midpoint of its support refinement
    consumes everything.
    """
    divisor = complex_.normalize_divisor(divisor)
    if not divisor.is_effective():
        raise NotEffectiveError(f"rigidity is defined for effective divisors, got {divisor}")
    state = ChipState.from_divisor(complex_, divisor)
    for vertex_id in state.sums:
        if state.chips.get(VertexPoint(vertex_id), 0) > 1:
            return False

    for base in _rigidity_bases(Skeleton(complex_, state.support_points())):
        node = base_node(complex_, base)
        skeleton = build_skeleton(complex_, state, node)
        if not burn_state(skeleton, state, node).is_reduced:
            logger.debug(f"{divisor} moves when burnt from {node}")
            return False
    return True
