"""
Constructive replay of Clifford's equality case.

Given a class of degree 2r and rank r with 0 < r < g - 1, the replay fixes a
pair of rigid divisors P + Q ~ K, matches every r-subset of P with an r-subset
of Q inside the class, reads off a partner q_i for each p_i, and confirms that
the classes p_i + q_i coincide and have rank one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.config.models import ValidatedEngineConfig
from src.core.exceptions import AssumptionViolation, PreconditionError, SearchBudgetExceeded
from src.core.logging import get_logger
from src.divisors.rank import RankEngine, representative_containing
from src.divisors.reduction import (
    DivisorClass, class_of, effective_representative, is_equivalent, is_rigid,
)
from src.divisors.skeleton import START, STOP, Skeleton
from src.model.complex import MetrizedComplex, canonical_divisor, genus
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, Point, VertexPoint

logger = get_logger(__name__)


@dataclass(frozen=True)
class CliffordWitnessContext:
    """Rigid P, Q of degree g - 1 with P + Q ~ K, and the search that produced them."""

    complex: MetrizedComplex
    P: Divisor
    Q: Divisor
    trials: int = 0
    seed: Optional[int] = None

    @property
    def p_points(self) -> Tuple[Point, ...]:
        return tuple(self.P.points())

    @property
    def q_points(self) -> Tuple[Point, ...]:
        return tuple(self.Q.points())

    @property
    def distinguished_vertex(self) -> Optional[str]:
        """v0 when the graph has genus at most one, else None."""
        if self.complex.first_betti >= 2:
            return None
        return _first_elliptic(self.complex)


def _first_elliptic(complex_: MetrizedComplex) -> Optional[str]:
    for vertex in complex_.vertices:
        if vertex.genus == 1:
            return vertex.id
    return None


class _Sampler:
    """Random rational points with bounded denominators."""

    def __init__(self, complex_: MetrizedComplex, config: ValidatedEngineConfig):
        self.complex = complex_
        self.bound = config.denominator_bound
        self.rng = np.random.default_rng(config.seed)

    def fraction(self) -> Fraction:
        denominator = int(self.rng.integers(2, self.bound + 1))
        return Fraction(int(self.rng.integers(1, denominator)), denominator)

    def edge_point(self) -> EdgePoint:
        edge = self.complex.edges[int(self.rng.integers(len(self.complex.edges)))]
        return EdgePoint(edge.id, edge.length * self.fraction())

    def component_point(self, vertex_id: str) -> ComponentPoint:
        return ComponentPoint(vertex_id, self.fraction())


def _node_coordinates(complex_: MetrizedComplex, vertex_id: str) -> set:
    return {complex_.node(end) for end in complex_.ends_at(vertex_id)}


def _generic_support(complex_: MetrizedComplex, divisor: Divisor) -> bool:
    for point, coefficient in divisor.items():
        if coefficient != 1:
            return False
        if isinstance(point, VertexPoint):
            return False
        if isinstance(point, ComponentPoint) and point.coordinate in _node_coordinates(complex_, point.vertex):
            return False
    return True


def _component_degrees(complex_: MetrizedComplex, divisor: Divisor) -> Dict[str, int]:
    degrees = {v.id: 0 for v in complex_.vertices if v.genus == 1}
    for point, coefficient in divisor.items():
        if isinstance(point, ComponentPoint):
            degrees[point.vertex] += coefficient
    return degrees


def _admissible(complex_: MetrizedComplex, P: Divisor, Q: Divisor, expected: Dict[str, int]) -> bool:
    if set(P.support()) & set(Q.support()):
        return False
    for divisor in (P, Q):
        if not _generic_support(complex_, divisor) or _component_degrees(complex_, divisor) != expected:
            return False
    return is_rigid(complex_, P) and is_rigid(complex_, Q)


def construct_pq(
    complex_: MetrizedComplex, config: Optional[ValidatedEngineConfig] = None
) -> Tuple[Divisor, Divisor]:
    """
    Rigid effective P and Q of degree g - 1 with P + Q ~ K, both avoiding the
    nodes and the rational vertices.

    With graph genus h >= 2, P has h - 1 edge points and one point on every
    genus-1 component. With h <= 1 a genus-1 vertex v0 carries no point of P;
    P has h edge points and one point on every other genus-1 component.

    Raises:
        PreconditionError: g <= 1
        SearchBudgetExceeded: no admissible pair within the trial budget
    """
    context = build_context(complex_, config)
    return context.P, context.Q


def build_context(
    complex_: MetrizedComplex, config: Optional[ValidatedEngineConfig] = None
) -> CliffordWitnessContext:
    config = config or ValidatedEngineConfig.from_env()
    g = genus(complex_)
    if g <= 1:
        raise PreconditionError(f"rigid canonical halves need genus at least 2, {complex_.name} has genus {g}")

    h = complex_.first_betti
    elliptic = [v.id for v in complex_.vertices if v.genus == 1]
    v0 = None if h >= 2 else _first_elliptic(complex_)
    graph_points = h - 1 if h >= 2 else h
    expected = {v: (0 if v == v0 else 1) for v in elliptic}
    canonical = canonical_divisor(complex_)
    sampler = _Sampler(complex_, config)

    for trial in range(1, config.search_budget + 1):
        chosen: List[Point] = [sampler.edge_point() for _ in range(graph_points)]
        chosen += [sampler.component_point(v) for v in elliptic if v != v0]
        P = Divisor.from_points(chosen)
        Q = effective_representative(complex_, canonical - P)
        if Q is None or not _admissible(complex_, P, Q, expected):
            logger.debug(f"trial {trial}: rejected P = {P}")
            continue
        logger.info(f"found rigid pair after {trial} trials: P = {P}, Q = {Q}")
        return CliffordWitnessContext(complex_, P, Q, trial, config.seed)

    raise SearchBudgetExceeded(
        f"no rigid node-avoiding pair on {complex_.name} in {config.search_budget} trials",
        trials=config.search_budget,
    )


def phi_map(context: CliffordWitnessContext, delta: DivisorClass, subset: Sequence[Point]) -> Divisor:
    """
    The r-subset B of Q with A + B in delta, for an r-subset A of P.

    Raises:
        AssumptionViolation: no representative of delta contains A, or the
            representative through A leaves Q
    """
    chosen = Divisor.from_points(subset)
    if not chosen <= context.P:
        raise PreconditionError(f"{chosen} is not part of P = {context.P}")
    representative = representative_containing(context.complex, delta.representative, chosen)
    if representative is None:
        raise AssumptionViolation(f"no representative of {delta} contains {chosen}")
    rest = representative - chosen
    if not rest <= context.Q or rest.degree != chosen.degree:
        raise AssumptionViolation(f"representative {representative} through {chosen} is not supported on P + Q")
    return rest


def _leaves_tree(complex_: MetrizedComplex, points: Sequence[EdgePoint]) -> bool:
    """Whether removing the given edge points from the graph leaves a tree."""
    cut = set(points)
    skeleton = Skeleton(complex_, points)
    graph = nx.MultiGraph()
    graph.add_nodes_from(n for n in skeleton.nodes if n not in cut)
    for segment in skeleton.segments:
        ends = set(segment.ends)
        if ends <= cut:
            return False
        if not ends & cut:
            graph.add_edge(segment.ends[START], segment.ends[STOP], key=segment.index)
    return nx.is_connected(graph) and graph.number_of_edges() == graph.number_of_nodes() - 1


def _cycle_point(complex_: MetrizedComplex, cut: Sequence[EdgePoint]) -> EdgePoint:
    """The midpoint of the first segment still on a cycle after removing the cut points."""
    skeleton = Skeleton(complex_, cut)
    graph = nx.MultiGraph()
    blocked = set(cut)
    graph.add_nodes_from(n for n in skeleton.nodes if n not in blocked)
    kept = [s for s in skeleton.segments if not set(s.ends) & blocked]
    for segment in kept:
        graph.add_edge(segment.ends[START], segment.ends[STOP], key=segment.index)
    for segment in kept:
        if segment.is_loop:
            return EdgePoint(segment.edge, (segment.start + segment.stop) / 2)
        graph.remove_edge(segment.ends[START], segment.ends[STOP], key=segment.index)
        on_cycle = nx.has_path(graph, segment.ends[START], segment.ends[STOP])
        graph.add_edge(segment.ends[START], segment.ends[STOP], key=segment.index)
        if on_cycle:
            return EdgePoint(segment.edge, (segment.start + segment.stop) / 2)
    raise AssumptionViolation("no cycle survives the graph points of P")


def _free_graph_point(complex_: MetrizedComplex, pair: Divisor, taken: set) -> Point:
    """A graph point outside ``taken`` that lies in some representative of the pair."""
    candidates: List[Point] = [VertexPoint(v.id) for v in complex_.vertices if v.genus == 0]
    for denominator in (2, 3, 4):
        for edge in complex_.edges:
            candidates += [EdgePoint(edge.id, edge.length * Fraction(k, denominator)) for k in range(1, denominator)]
    for candidate in candidates:
        if candidate in taken:
            continue
        if representative_containing(complex_, pair, Divisor({candidate: 1})) is not None:
            return candidate
    raise AssumptionViolation(f"no graph point lies in a representative of {pair}")


def extend_to_rank_determining(context: CliffordWitnessContext, pair: Divisor) -> Tuple[Point, ...]:
    """
    P together with two auxiliary points: p_h closing the last cycle (h >= 2)
    or p_0 completing the component of v0 (h <= 1), and a graph point p in a
    representative of the pair.
    """
    complex_ = context.complex
    graph_part = [p for p in context.p_points if isinstance(p, EdgePoint)]
    if complex_.first_betti >= 2:
        auxiliary: Point = _cycle_point(complex_, graph_part)
        cut = graph_part + [auxiliary]
    else:
        v0 = context.distinguished_vertex
        taken = _node_coordinates(complex_, v0)
        auxiliary = ComponentPoint(v0, complex_.free_component_coordinate(v0, taken))
        cut = graph_part
    if not _leaves_tree(complex_, cut):
        raise AssumptionViolation(f"removing {[str(p) for p in cut]} does not leave a tree")

    extra = _free_graph_point(complex_, pair, set(context.p_points) | {auxiliary})
    extended = context.p_points + (auxiliary, extra)
    degrees = _component_degrees(complex_, Divisor.from_points(extended))
    if any(d != 1 for d in degrees.values()):
        raise AssumptionViolation(f"extended set {[str(p) for p in extended]} misses a component")
    return extended


@dataclass(frozen=True)
class WitnessRun:
    """Everything a replay computed, for reports and tests."""

    g12: DivisorClass
    pairs: Tuple[Tuple[Point, Point], ...]
    context: CliffordWitnessContext
    rds: Tuple[Point, ...]
    subsets: Dict[Tuple[Point, ...], Divisor] = field(default_factory=dict)


def _check_preconditions(complex_: MetrizedComplex, delta: DivisorClass, r: int) -> None:
    g = genus(complex_)
    if not 0 < r < g - 1:
        raise PreconditionError(f"need 0 < r < g - 1, got r={r} with g={g}")
    if delta.degree != 2 * r:
        raise PreconditionError(f"class has degree {delta.degree}, expected {2 * r}")
    value = RankEngine(complex_).rank(delta.representative).rank
    if value != r:
        raise PreconditionError(f"class has rank {value}, expected {r}")


def replay_clifford_witness(
    complex_: MetrizedComplex,
    delta: DivisorClass,
    r: int,
    config: Optional[ValidatedEngineConfig] = None,
) -> WitnessRun:
    """
    Raises:
        PreconditionError: degree, rank or range of r is off
        AssumptionViolation: a step of the pairing argument fails
    """
    _check_preconditions(complex_, delta, r)
    context = build_context(complex_, config)
    p_points = context.p_points

    images: Dict[Tuple[Point, ...], Divisor] = {}
    for subset in combinations(p_points, r):
        images[subset] = phi_map(context, delta, subset)

    pairs: List[Tuple[Point, Point]] = []
    for point in p_points:
        union = Divisor()
        for subset, image in images.items():
            if point not in subset:
                union = union.cup(image)
        missing = context.Q - union
        if missing.degree != 1:
            raise AssumptionViolation(f"subsets avoiding {point} miss {missing} in Q, not a single point")
        pairs.append((point, missing.support()[0]))

    partners = [q for _, q in pairs]
    if len(set(partners)) != len(partners):
        raise AssumptionViolation(f"partners {[str(q) for q in partners]} are not distinct")

    first = Divisor.from_points(pairs[0])
    for pair in pairs[1:]:
        if not is_equivalent(complex_, first, Divisor.from_points(pair)):
            raise AssumptionViolation(f"{pair[0]} + {pair[1]} is not equivalent to {first}")

    extended = extend_to_rank_determining(context, first)
    for point in dict.fromkeys(extended):
        if effective_representative(complex_, first - Divisor({point: 1})) is None:
            raise AssumptionViolation(f"{first} - {point} has no effective representative")
    value = RankEngine(complex_).rank(first).rank
    if value != 1:
        raise AssumptionViolation(f"{first} has rank {value}, not 1")

    logger.info(f"{complex_.name}: Clifford equality witnessed by {first}")
    return WitnessRun(class_of(complex_, first), tuple(pairs), context, extended, images)


def clifford_witness(
    complex_: MetrizedComplex,
    delta: DivisorClass,
    r: int,
    config: Optional[ValidatedEngineConfig] = None,
) -> DivisorClass:
    """A degree-2 class of rank one, built from a class of degree 2r and rank r."""
    return replay_clifford_witness(complex_, delta, r, config).g12
