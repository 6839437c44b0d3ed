"""
Dhar's burning algorithm on a metrized complex.

Fire starts at the base node and spreads along segments. A rational node burns
once it holds fewer chips than burnt directions reaching it; a genus-1 node
also burns when the chip counts tie but the component class left after
removing one point per burnt node is not effective.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Set, Tuple

from src.core.exceptions import NotEffectiveError
from src.core.logging import get_logger
from src.divisors.skeleton import START, STOP, ChipState, Segment, Skeleton, base_node
from src.model.complex import MetrizedComplex
from src.model.divisor import Divisor
from src.model.points import EdgePoint, Point, mod_one

logger = get_logger(__name__)


@dataclass(frozen=True)
class Move:
    """One chip leaving ``source`` along a segment and landing at ``target``."""

    source: Point
    target: Point
    leaving_node: Optional[Fraction] = None
    arriving_node: Optional[Fraction] = None


@dataclass(frozen=True)
class BurnResult:
    base: Point
    burnt: FrozenSet[Point]
    unburnt: FrozenSet[Point]
    epsilon: Optional[Fraction]
    moves: Tuple[Move, ...]

    @property
    def is_reduced(self) -> bool:
        return not self.unburnt


def _burns(skeleton: Skeleton, state: ChipState, node: Point, ends: List[Tuple[Segment, int]]) -> bool:
    chips = state.chips.get(node, 0)
    if chips < len(ends):
        return True
    if skeleton.genus_at(node) == 1 and chips == len(ends):
        attached = sum((skeleton.node_coordinate(s, side) for s, side in ends), Fraction(0))
        return mod_one(state.sums[node.vertex] - attached) != 0
    return False


def burn_state(skeleton: Skeleton, state: ChipState, base: Point) -> BurnResult:
    """Run the burn on a prepared skeleton; chips must already be effective away from ``base``."""
    burnt: Set[Point] = {base}
    burnt_segments: Set[int] = set()
    frontier = [base]
    while frontier:
        node = frontier.pop()
        for index, _ in skeleton.incidence[node]:
            if index in burnt_segments:
                continue
            burnt_segments.add(index)
            segment = skeleton.segments[index]
            for side in (START, STOP):
                other = segment.ends[side]
                if other in burnt:
                    continue
                ends = [
                    (skeleton.segments[i], s) for i, s in skeleton.incidence[other] if i in burnt_segments
                ]
                if _burns(skeleton, state, other, ends):
                    burnt.add(other)
                    frontier.append(other)

    unburnt = frozenset(n for n in skeleton.nodes if n not in burnt)
    if not unburnt:
        return BurnResult(base, frozenset(burnt), unburnt, None, ())

    exits = [
        (skeleton.segments[i], side)
        for node in unburnt
        for i, side in skeleton.incidence[node]
        if i in burnt_segments
    ]
    epsilon = min(segment.length for segment, _ in exits)
    moves = []
    for segment, side in exits:
        arrives = epsilon == segment.length
        moves.append(Move(
            source=segment.ends[side],
            target=skeleton.walk(segment, side, epsilon),
            leaving_node=skeleton.node_coordinate(segment, side),
            arriving_node=skeleton.node_coordinate(segment, 1 - side) if arrives else None,
        ))
    return BurnResult(base, frozenset(burnt), unburnt, epsilon, tuple(moves))


def apply_moves(state: ChipState, moves: Tuple[Move, ...]) -> None:
    for move in moves:
        state.add_chip(move.source, -1, move.leaving_node)
        state.add_chip(move.target, 1, move.arriving_node)


def check_effective_away(skeleton: Skeleton, state: ChipState, base: Point) -> None:
    for node in skeleton.nodes:
        if node != base and not state.is_effective_at(node):
            raise NotEffectiveError(f"divisor is not effective away from {base} (at {node})")


def build_skeleton(complex_: MetrizedComplex, state: ChipState, base: Point) -> Skeleton:
    extra = [base] if isinstance(base, EdgePoint) else []
    return Skeleton(complex_, state.support_points() + extra)


def dhar_burn(complex_: MetrizedComplex, divisor: Divisor, base: Point) -> BurnResult:
    """
    Burn from ``base`` and report the unburnt part with the move that fires it.

    Raises:
        NotEffectiveError: the divisor is not effective away from the base
    """
    node = base_node(complex_, base)
    state = ChipState.from_divisor(complex_, divisor)
    skeleton = build_skeleton(complex_, state, node)
    check_effective_away(skeleton, state, node)
    result = burn_state(skeleton, state, node)
    logger.debug(f"burn from {node}: {len(result.unburnt)} unburnt nodes")
    return result
