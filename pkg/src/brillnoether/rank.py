"""
Brill-Noether rank of metric graphs on a rational lattice.

w^r_d is the largest rho such that every effective divisor of degree r + rho
lies in some divisor of degree d and rank at least r. The quantifier over
effective divisors runs over the points of the 1/refinement lattice, so
results are estimates unless the hyperelliptic formula pins them down.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import List, Optional, Tuple

from src.config.models import ValidatedEngineConfig
from src.core.exceptions import PreconditionError
from src.core.logging import get_logger
from src.divisors.rank import RankEngine
from src.hyperelliptic.structure import iota, structure_check
from src.model.complex import MetrizedComplex, genus
from src.model.divisor import Divisor
from src.model.points import EdgePoint, Point, VertexPoint

logger = get_logger(__name__)


def lattice_points(complex_: MetrizedComplex, refinement: int) -> List[Point]:
    """All vertices and the edge points at multiples of L/refinement."""
    if refinement < 1:
        raise PreconditionError(f"refinement must be positive, got {refinement}")
    points: List[Point] = [VertexPoint(v.id) for v in complex_.vertices]
    for edge in complex_.edges:
        points += [EdgePoint(edge.id, edge.length * Fraction(k, refinement)) for k in range(1, refinement)]
    return points


def _require_graph(complex_: MetrizedComplex) -> None:
    if any(v.genus for v in complex_.vertices):
        raise PreconditionError(f"{complex_.name} has genus-1 components; Brill-Noether ranks need a metric graph")


def contained_in_rank_class(
    complex_: MetrizedComplex,
    contained: Divisor,
    d: int,
    r: int,
    refinement: int = 2,
    engine: Optional[RankEngine] = None,
) -> bool:
    """
    Whether E + F has rank at least r for some effective lattice divisor F of
    degree d - deg(E). False only means no lattice F was found.
    """
    _require_graph(complex_)
    contained = complex_.normalize_divisor(contained)
    if contained.degree > d:
        raise PreconditionError(f"deg(E) = {contained.degree} exceeds d = {d}")
    engine = engine or RankEngine(complex_)
    for extra in combinations_with_replacement(lattice_points(complex_, refinement), d - contained.degree):
        if engine.rank(contained + Divisor.from_points(extra)).rank >= r:
            return True
    return False


@dataclass(frozen=True)
class BNResult:
    rho: int
    refinement: int
    exact: bool
    failures: Tuple[Divisor, ...] = ()

    @property
    def label(self) -> str:
        return "exact" if self.exact else "estimate"


def _martens_range(complex_: MetrizedComplex, d: int, r: int) -> bool:
    return 0 < 2 * r <= d < genus(complex_)


def bn_rank(
    complex_: MetrizedComplex,
    d: int,
    r: int,
    refinement: Optional[int] = None,
    config: Optional[ValidatedEngineConfig] = None,
) -> BNResult:
    """
    Raises:
        PreconditionError: r or d out of range, or components of positive genus
    """
    _require_graph(complex_)
    if not 0 <= r <= d:
        raise PreconditionError(f"need 0 <= r <= d, got r={r}, d={d}")
    config = config or ValidatedEngineConfig.from_env()
    threads = config.threads
    if refinement is None:
        refinement = config.bn_refinement
    engine = RankEngine(complex_)
    lattice = lattice_points(complex_, refinement)

    def passes(candidate: Divisor) -> bool:
        return contained_in_rank_class(complex_, candidate, d, r, refinement, engine)

    rho = -1
    failures: Tuple[Divisor, ...] = ()
    for attempt in range(0, d - r + 1):
        candidates = [Divisor.from_points(c) for c in combinations_with_replacement(lattice, r + attempt)]
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                outcomes = list(pool.map(passes, candidates))
        else:
            outcomes = [passes(c) for c in candidates]
        failing = tuple(c for c, ok in zip(candidates, outcomes) if not ok)
        if failing:
            failures = failing
            break
        rho = attempt
        logger.debug(f"rho >= {rho}: all {len(candidates)} lattice divisors of degree {r + attempt} pass")

    exact = (
        _martens_range(complex_, d, r)
        and rho == d - 2 * r
        and structure_check(complex_).hyperelliptic
    )
    if not exact:
        logger.warning(f"w^{r}_{d} = {rho} on the 1/{refinement} lattice is an estimate")
    return BNResult(rho, refinement, exact, failures)


@dataclass(frozen=True)
class MartensReport:
    result: BNResult
    d: int
    r: int
    hyperelliptic: bool

    @property
    def bound(self) -> int:
        return self.d - 2 * self.r

    @property
    def within_bound(self) -> bool:
        return self.result.rho <= self.bound

    @property
    def tight(self) -> bool:
        return self.result.rho == self.bound

    @property
    def holds(self) -> bool:
        return self.within_bound and (self.tight or not self.hyperelliptic)

    @property
    def conjecture_instance(self) -> bool:
        """Equality on a graph that is not hyperelliptic."""
        return self.tight and not self.hyperelliptic


def martens_check(
    complex_: MetrizedComplex,
    d: int,
    r: int,
    refinement: Optional[int] = None,
    config: Optional[ValidatedEngineConfig] = None,
) -> MartensReport:
    """
    Raises:
        PreconditionError: outside 0 < 2r <= d < g
    """
    if not _martens_range(complex_, d, r):
        raise PreconditionError(f"need 0 < 2r <= d < g, got r={r}, d={d}, g={genus(complex_)}")
    report = MartensReport(
        bn_rank(complex_, d, r, refinement, config), d, r, structure_check(complex_).hyperelliptic
    )
    if not report.holds:
        logger.error(f"Martens bound fails on {complex_.name}: w = {report.result.rho}, bound {report.bound}")
    elif report.conjecture_instance:
        logger.warning(f"{complex_.name} attains w = d - 2r without being hyperelliptic")
    return report


def martens_completion(complex_: MetrizedComplex, contained: Divisor, r: int) -> Divisor:
    """E + iota(p_1) + ... + iota(p_r) for the first r points of E."""
    contained = complex_.normalize_divisor(contained)
    points = list(contained.points())
    if not contained.is_effective() or len(points) < r:
        raise PreconditionError(f"need an effective divisor of degree at least {r}, got {contained}")
    return contained + Divisor.from_points(iota(complex_, p) for p in points[:r])
