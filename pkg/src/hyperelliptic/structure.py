"""
Hyperelliptic structure: detection, the g^1_2, the map iota, and the
decomposition of divisors into multiples of the g^1_2 plus free points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import List, Optional, Tuple

from src.core.exceptions import (
    AssumptionViolation, NotHyperellipticError, PreconditionError,
)
from src.core.logging import get_logger
from src.divisors.rank import RankEngine
from src.divisors.reduction import DivisorClass, class_of, reduce_at
from src.hyperelliptic.involution import Involution, involutions, is_tree_quotient
from src.model.complex import MetrizedComplex, genus
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, Point, VertexPoint

logger = get_logger(__name__)

COMPONENT_CONDITION = "vacuous: no components of genus two or more"


@dataclass(frozen=True)
class StructureReport:
    """Outcome of the hyperelliptic structure test; failures are listed, never raised."""

    hyperelliptic: bool
    involution: Optional[Involution] = None
    g12: Optional[DivisorClass] = None
    failures: Tuple[str, ...] = ()
    component_condition: str = COMPONENT_CONDITION
    candidates: int = 0


def _component_failure(complex_: MetrizedComplex, involution: Involution) -> Optional[str]:
    for vertex in complex_.vertices:
        if vertex.genus != 1:
            continue
        if involution.vertex_map[vertex.id] != vertex.id:
            return f"genus-1 vertex {vertex.id} is not fixed"
        sign, _ = involution.component_maps[vertex.id]
        if sign != -1:
            return f"node pairs on {vertex.id} have unequal coordinate sums"
    return None


def sample_point(complex_: MetrizedComplex) -> Point:
    edge = complex_.edges[0]
    return EdgePoint(edge.id, edge.length / 3)


@lru_cache(maxsize=64)
def structure_check(complex_: MetrizedComplex) -> StructureReport:
    """
    Look for an involution whose quotient is a tree, which fixes every genus-1
    vertex and acts there as a reflection. The class of p + iota(p) is then
    confirmed to have rank one when g >= 2.
    """
    g = genus(complex_)
    failures: List[str] = []
    candidates = involutions(complex_)
    for involution in candidates:
        if not is_tree_quotient(complex_, involution):
            failures.append(f"{involution}: quotient is not a tree")
            continue
        problem = _component_failure(complex_, involution)
        if problem:
            failures.append(f"{involution}: {problem}")
            continue
        if g < 2:
            return StructureReport(True, involution, None, tuple(failures), candidates=len(candidates))

        point = sample_point(complex_)
        pair = Divisor.from_points([point, involution.image(complex_, point)])
        value = RankEngine(complex_).rank(pair).rank
        if value != 1:
            failures.append(f"{involution}: {pair} has rank {value}, not 1")
            continue
        logger.info(f"{complex_.name} is hyperelliptic via {involution}")
        return StructureReport(True, involution, class_of(complex_, pair), tuple(failures), candidates=len(candidates))

    logger.info(f"{complex_.name}: no involution passes ({len(candidates)} tried)")
    return StructureReport(False, None, None, tuple(failures), candidates=len(candidates))


def _require(complex_: MetrizedComplex) -> StructureReport:
    report = structure_check(complex_)
    if not report.hyperelliptic:
        raise NotHyperellipticError(f"complex {complex_.name} is not hyperelliptic")
    return report


def g12(complex_: MetrizedComplex) -> Optional[DivisorClass]:
    """The unique degree-2 rank-1 class, or None when the complex is not hyperelliptic."""
    if genus(complex_) < 2:
        raise PreconditionError(f"g12 needs genus at least 2, {complex_.name} has genus {genus(complex_)}")
    return structure_check(complex_).g12


def iota(complex_: MetrizedComplex, point: Point) -> Point:
    """
    The hyperelliptic conjugate of a point.

    Raises:
        NotHyperellipticError: no hyperelliptic involution exists
        InvalidPointError: the point is a bare genus-1 vertex
    """
    report = _require(complex_)
    point = complex_.normalize_point(point)
    return report.involution.image(complex_, point)


def fixed_point(complex_: MetrizedComplex, involution: Involution) -> Point:
    """A point with iota(p) = p: a fixed rational vertex, a genus-1 reflection center, or a reversed edge midpoint."""
    for vertex_id in involution.fixed_vertices():
        if complex_.genus_of(vertex_id) == 0:
            return VertexPoint(vertex_id)
    for vertex_id in involution.fixed_vertices():
        if complex_.genus_of(vertex_id) == 1:
            _, shift = involution.component_maps[vertex_id]
            return ComponentPoint(vertex_id, shift / 2)
    for edge_id in involution.fixed_edges():
        if involution.reversed[edge_id]:
            return EdgePoint(edge_id, complex_.edge(edge_id).length / 2)
    raise AssumptionViolation(f"involution {involution} has no fixed point")


@dataclass(frozen=True)
class Decomposition:
    rank: int
    residual: Divisor
    fixed_point: Point
    reduced: Divisor = field(default_factory=Divisor)

    def reassemble(self) -> Divisor:
        return Divisor({self.fixed_point: 2 * self.rank}) + self.residual


def decompose(complex_: MetrizedComplex, divisor: Divisor) -> Decomposition:
    """
    Write D ~ r * g12 + p_{2r+1} + ... + p_d.

    The reduced divisor at a fixed point p of iota has at least 2r chips at p;
    since 2p lies in the g12, the rest are the free points.

    Raises:
        PreconditionError: r < 0 or d > g
        NotHyperellipticError: the complex is not hyperelliptic
        AssumptionViolation: the reduced divisor has fewer than 2r chips at p
    """
    divisor = complex_.normalize_divisor(divisor)
    g = genus(complex_)
    r = RankEngine(complex_).rank(divisor).rank
    if not 0 <= r <= divisor.degree <= g:
        raise PreconditionError(f"decompose needs 0 <= r <= d <= g, got r={r}, d={divisor.degree}, g={g}")
    report = _require(complex_)

    point = fixed_point(complex_, report.involution)
    reduced = reduce_at(complex_, divisor, point)
    if reduced[point] < 2 * r:
        raise AssumptionViolation(f"reduced divisor {reduced} has {reduced[point]} chips at {point}, fewer than {2 * r}")
    residual = reduced - Divisor({point: 2 * r})
    if not residual.is_effective():
        raise AssumptionViolation(f"residual {residual} is not effective")
    logger.debug(f"decomposed {divisor} as {r}*g12 + {residual}")
    return Decomposition(r, residual, point, reduced)


def gonality_two_search(complex_: MetrizedComplex, refinement: int = 2) -> Optional[DivisorClass]:
    """
    Brute force: a degree-2 effective divisor of rank one supported on the
    1/refinement lattice (vertices, edge points at multiples of L/refinement,
    component points at multiples of 1/refinement), or None.
    """
    if refinement < 1:
        raise PreconditionError("refinement must be positive")
    lattice: List[Point] = []
    for vertex in complex_.vertices:
        if vertex.genus == 0:
            lattice.append(VertexPoint(vertex.id))
        else:
            lattice.extend(ComponentPoint(vertex.id, Fraction(k, refinement)) for k in range(refinement))
    for edge in complex_.edges:
        lattice.extend(EdgePoint(edge.id, edge.length * Fraction(k, refinement)) for k in range(1, refinement))

    engine = RankEngine(complex_)
    for pair in combinations_with_replacement(lattice, 2):
        candidate = Divisor.from_points(pair)
        if engine.rank(candidate).rank == 1:
            return class_of(complex_, candidate)
    return None
