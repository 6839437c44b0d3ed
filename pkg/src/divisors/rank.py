"""
Ranks of divisors on metrized complexes.

The rank is computed over a rank-determining set R: r(D) = -1 when D has no
effective representative, and otherwise 1 + min r(D - p) over p in R.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Tuple

from src.core.exceptions import NotEffectiveError
from src.core.logging import get_logger
from src.divisors.cache import RankCache
from src.divisors.reduction import effective_representative, global_base, materialize, reduced_state
from src.model.complex import MetrizedComplex, canonical_divisor, genus
from src.model.divisor import Divisor
from src.model.points import ComponentPoint, EdgePoint, Point, VertexPoint, mod_one

logger = get_logger(__name__)

_shared_cache = RankCache()


def rank_determining_set(complex_: MetrizedComplex) -> List[Point]:
    """
    g + 1 points: the midpoint of every edge outside a spanning tree, one more
    graph point, and one non-node point on each genus-1 component.
    """
    points: List[Point] = [
        EdgePoint(edge_id, complex_.edge(edge_id).length / 2) for edge_id in complex_.non_tree_edges
    ]

    rational = [v.id for v in complex_.vertices if v.genus == 0]
    if rational:
        points.append(VertexPoint(rational[0]))
    elif complex_.spanning_tree_edges:
        first = complex_.edge(complex_.spanning_tree_edges[0])
        points.append(EdgePoint(first.id, first.length / 2))
    elif complex_.edges:
        first = complex_.edges[0]
        points.append(EdgePoint(first.id, first.length / 3))
    else:
        # a lone elliptic component: a second point of C_v plays the graph point
        only = complex_.vertices[0].id
        points.append(ComponentPoint(only, complex_.free_component_coordinate(only, [Fraction(1, 2)])))

    for vertex in complex_.vertices:
        if vertex.genus == 1:
            points.append(ComponentPoint(vertex.id, complex_.free_component_coordinate(vertex.id)))
    return points


@dataclass(frozen=True)
class RankCertificate:
    """
    The rank with the evidence behind it.

    ``failure`` is a multiset of r + 1 points of the rank-determining set whose
    removal leaves no effective representative. With ``certify`` set,
    ``witnesses`` maps every multiset of size r to an effective representative
    of D minus it. For r = -1, ``reduced`` is the reduced divisor at the global
    base, which is not effective there.
    """

    rank: int
    failure: Tuple[Point, ...]
    rds: Tuple[Point, ...]
    witnesses: Mapping[Tuple[Point, ...], Divisor] = field(default_factory=dict)
    reduced: Optional[Divisor] = None


class RankEngine:
    """Memoized rank search over a fixed rank-determining set."""

    def __init__(self, complex_: MetrizedComplex, cache: Optional[RankCache] = None, threads: int = 1):
        self.complex = complex_
        self.rds = tuple(rank_determining_set(complex_))
        self.cache = cache if cache is not None else _shared_cache
        self.threads = threads

    def _candidates(self) -> Tuple[Point, ...]:
        return tuple(dict.fromkeys(self.rds))

    def _reduce(self, divisor: Divisor):
        base = global_base(self.complex)
        state = reduced_state(self.complex, divisor, base)
        key = (self.complex, divisor.degree) + state.class_key()
        return state, key, state.is_effective_at(base)

    def search(self, divisor: Divisor) -> Tuple[int, Tuple[Point, ...]]:
        state, key, effective = self._reduce(divisor)
        if not effective:
            return -1, ()
        return self.cache.get_or_set(key, lambda: self._expand(materialize(state), parallel=False))

    def _expand(self, representative: Divisor, parallel: bool) -> Tuple[int, Tuple[Point, ...]]:
        candidates = self._candidates()
        if parallel and self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                branches = list(pool.map(lambda p: self.search(representative - Divisor({p: 1})), candidates))
        else:
            branches = []
            for point in candidates:
                branch = self.search(representative - Divisor({point: 1}))
                branches.append(branch)
                if branch[0] == -1:
                    break
        index = min(range(len(branches)), key=lambda i: branches[i][0])
        value, failure = branches[index]
        return value + 1, (candidates[index],) + failure

    def rank(self, divisor: Divisor, certify: bool = False) -> RankCertificate:
        divisor = self.complex.normalize_divisor(divisor)
        state, key, effective = self._reduce(divisor)
        if not effective:
            return RankCertificate(-1, (), self.rds, reduced=materialize(state, global_base(self.complex)))

        value, failure = self.cache.get_or_set(key, lambda: self._expand(materialize(state), parallel=True))
        witnesses: Dict[Tuple[Point, ...], Divisor] = {}
        if certify:
            for chosen in combinations_with_replacement(self._candidates(), value):
                witness = effective_representative(self.complex, divisor - Divisor.from_points(chosen))
                witnesses[chosen] = witness
        logger.debug(f"rank({divisor}) = {value}, failing at {[str(p) for p in failure]}")
        return RankCertificate(value, failure, self.rds, witnesses)


def rank(complex_: MetrizedComplex, divisor: Divisor, certify: bool = False, threads: int = 1) -> RankCertificate:
    return RankEngine(complex_, threads=threads).rank(divisor, certify=certify)


def rank_value(complex_: MetrizedComplex, divisor: Divisor) -> int:
    return rank(complex_, divisor).rank


def representative_containing(complex_: MetrizedComplex, divisor: Divisor, contained: Divisor) -> Optional[Divisor]:
    """
    An effective representative of [D] that contains E, or None.

    Raises:
        NotEffectiveError: E is not effective
    """
    contained = complex_.normalize_divisor(contained)
    if not contained.is_effective():
        raise NotEffectiveError(f"prescribed divisor {contained} is not effective")
    rest = effective_representative(complex_, complex_.normalize_divisor(divisor) - contained)
    if rest is None:
        return None
    return rest + contained


def component_rank(complex_: MetrizedComplex, divisor: Divisor, vertex_id: str) -> int:
    """Rank of the restriction of D to the component C_v."""
    part = [(p, c) for p, c in divisor.items() if complex_.vertex_of(p) == vertex_id]
    degree = sum(c for _, c in part)
    if degree < 0:
        return -1
    if complex_.genus_of(vertex_id) == 0:
        return degree
    if degree >= 1:
        return degree - 1
    total = mod_one(sum((p.coordinate * c for p, c in part if isinstance(p, ComponentPoint)), Fraction(0)))
    return 0 if total == 0 else -1


def local_rank_representative(
    complex_: MetrizedComplex,
    divisor: Divisor,
    contained: Divisor,
    component_ranks: Mapping[str, int],
) -> Optional[Divisor]:
    """
    A representative containing E whose restriction to each listed component
    has degree and rank at least the prescribed value; None when the
    representative found does not meet them.
    """
    candidate = representative_containing(complex_, divisor, contained)
    if candidate is None:
        return None
    for vertex_id, required in component_ranks.items():
        degree = sum(c for p, c in candidate.items() if complex_.vertex_of(p) == vertex_id)
        if degree < required or component_rank(complex_, candidate, vertex_id) < required:
            logger.info(f"representative {candidate} has rank below {required} on component {vertex_id}")
            return None
    return candidate


@dataclass(frozen=True)
class RiemannRochReport:
    degree: int
    genus: int
    rank: int
    dual_rank: int

    @property
    def lhs(self) -> int:
        return self.rank - self.dual_rank

    @property
    def rhs(self) -> int:
        return self.degree - self.genus + 1

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def verify_riemann_roch(complex_: MetrizedComplex, divisor: Divisor) -> RiemannRochReport:
    divisor = complex_.normalize_divisor(divisor)
    engine = RankEngine(complex_)
    dual = canonical_divisor(complex_) - divisor
    return RiemannRochReport(divisor.degree, genus(complex_), engine.rank(divisor).rank, engine.rank(dual).rank)


@dataclass(frozen=True)
class CliffordReport:
    degree: int
    rank: int
    dual_rank: int
    genus: int
    hyperelliptic: Optional[bool] = None

    @property
    def special(self) -> bool:
        return self.rank >= 0 and self.dual_rank >= 0

    @property
    def holds(self) -> bool:
        return not self.special or self.degree >= 2 * self.rank

    @property
    def equality(self) -> bool:
        return self.special and self.degree == 2 * self.rank


def verify_clifford(complex_: MetrizedComplex, divisor: Divisor) -> CliffordReport:
    """
    Check deg(D) >= 2 r(D) for special D. In the equality case with
    0 < r < g - 1 the report also says whether the complex is hyperelliptic.
    """
    divisor = complex_.normalize_divisor(divisor)
    engine = RankEngine(complex_)
    g = genus(complex_)
    r = engine.rank(divisor).rank
    dual = engine.rank(canonical_divisor(complex_) - divisor).rank
    report = CliffordReport(divisor.degree, r, dual, g)
    if report.equality and 0 < r < g - 1:
        from src.hyperelliptic.structure import structure_check

        report = CliffordReport(divisor.degree, r, dual, g, structure_check(complex_).hyperelliptic)
    if not report.holds:
        logger.warning(f"Clifford bound fails for {divisor}: degree {divisor.degree} < 2 * {r}")
    return report
