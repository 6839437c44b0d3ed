"""Command registry for the tdw command line."""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from src.cli.reports import Report
from src.config.models import ValidatedEngineConfig
from src.core.exceptions import UsageError
from src.core.options import RuntimeOptions
from src.divisors.rank import RankEngine, verify_clifford, verify_riemann_roch
from src.divisors.reduction import class_of, global_base, is_equivalent, is_rigid, reduce_at
from src.dsl.parser import ComplexDocument, parse_location
from src.hyperelliptic.clifford import replay_clifford_witness
from src.hyperelliptic.structure import decompose, structure_check
from src.brillnoether.rank import bn_rank, martens_check
from src.model.complex import canonical_divisor, genus

Handler = Callable[[ComplexDocument, RuntimeOptions, ValidatedEngineConfig, Report], None]


@dataclass(frozen=True)
class Command:
    name: str
    handler: Handler
    description: str


class CommandRegistry:
    """Central registry of tdw subcommands."""

    def __init__(self):
        self._commands: Dict[str, Command] = {}

    def register(self, name: str, description: str) -> Callable[[Handler], Handler]:
        """Register a handler under a subcommand name."""
        def decorator(handler: Handler) -> Handler:
            self._commands[name] = Command(name, handler, description)
            return handler
        return decorator

    def get(self, name: str) -> Optional[Command]:
        return self._commands.get(name)

    def list_commands(self) -> List[Command]:
        return sorted(self._commands.values(), key=lambda c: c.name)


registry = CommandRegistry()


def get_registry() -> CommandRegistry:
    """Get the global command registry."""
    return registry


@registry.register("rank", "rank of a divisor, with the failing multiset")
def rank_command(document, options, config, report):
    divisor = document.divisor(options.divisor)
    certificate = RankEngine(document.complex, threads=config.threads).rank(divisor)
    report.inputs["divisor"] = divisor
    report.result.update(rank=certificate.rank, degree=divisor.degree, genus=genus(document.complex))
    report.certificate.update(failure=list(certificate.failure), rds=list(certificate.rds))
    if certificate.reduced is not None:
        report.certificate["reduced"] = certificate.reduced


@registry.register("reduce", "reduced divisor at a base point")
def reduce_command(document, options, config, report):
    divisor = document.divisor(options.divisor)
    base = parse_location(document, options.base)
    reduced = reduce_at(document.complex, divisor, base)
    report.inputs.update(divisor=divisor, base=base)
    report.result.update(reduced=reduced, effective=reduced.is_effective())


@registry.register("equiv", "linear equivalence of two divisors")
def equiv_command(document, options, config, report):
    first, second = (document.divisor(name) for name in options.divisors)
    report.inputs.update(first=first, second=second)
    report.result["equivalent"] = is_equivalent(document.complex, first, second)
    base = global_base(document.complex)
    report.certificate["reduced"] = [reduce_at(document.complex, first, base), reduce_at(document.complex, second, base)]


@registry.register("rigid", "whether an effective divisor is alone in its class")
def rigid_command(document, options, config, report):
    divisor = document.divisor(options.divisor)
    report.inputs["divisor"] = divisor
    report.result["rigid"] = is_rigid(document.complex, divisor)


@registry.register("canonical", "canonical divisor, genus and the rank of K")
def canonical_command(document, options, config, report):
    canonical = canonical_divisor(document.complex)
    report.result.update(
        canonical=canonical,
        degree=canonical.degree,
        genus=genus(document.complex),
        rank=RankEngine(document.complex).rank(canonical).rank,
    )


@registry.register("hyperelliptic", "hyperelliptic structure test and g12")
def hyperelliptic_command(document, options, config, report):
    check = structure_check(document.complex)
    report.result.update(
        hyperelliptic=check.hyperelliptic,
        involution=str(check.involution) if check.involution else None,
        g12=check.g12.representative if check.g12 else None,
        component_condition=check.component_condition,
    )
    report.certificate.update(failures=list(check.failures), involutions_tried=check.candidates)


@registry.register("witness", "degree-2 rank-1 class from a class of degree 2r and rank r")
def witness_command(document, options, config, report):
    divisor = document.divisor(options.divisor)
    run = replay_clifford_witness(document.complex, class_of(document.complex, divisor), options.r, config)
    report.inputs.update(divisor=divisor, r=options.r, seed=config.seed)
    report.result["g12"] = run.g12.representative
    report.certificate.update(
        P=run.context.P,
        Q=run.context.Q,
        trials=run.context.trials,
        pairs=[f"{p} + {q}" for p, q in run.pairs],
        rds=list(run.rds),
    )


@registry.register("decompose", "write a divisor as r*g12 plus free points")
def decompose_command(document, options, config, report):
    divisor = document.divisor(options.divisor)
    decomposition = decompose(document.complex, divisor)
    report.inputs["divisor"] = divisor
    report.result.update(rank=decomposition.rank, residual=decomposition.residual)
    report.certificate.update(fixed_point=decomposition.fixed_point, reduced=decomposition.reduced)


@registry.register("bn", "Brill-Noether rank on a rational lattice")
def bn_command(document, options, config, report):
    result = bn_rank(document.complex, options.d, options.r, config=config)
    report.inputs.update(d=options.d, r=options.r, refine=config.bn_refinement)
    report.result.update(rho=result.rho, exact=result.exact, refinement=result.refinement)
    report.certificate["failures"] = list(result.failures[:10])


@registry.register("check", "theorem checks: rr, clifford, martens")
def check_command(document, options, config, report):
    complex_ = document.complex
    if options.check == "rr":
        divisor = document.divisor(options.divisor)
        outcome = verify_riemann_roch(complex_, divisor)
        report.inputs["divisor"] = divisor
        report.result.update(holds=outcome.holds, lhs=outcome.lhs, rhs=outcome.rhs)
        report.certificate.update(rank=outcome.rank, dual_rank=outcome.dual_rank)
        report.passed = outcome.holds
    elif options.check == "clifford":
        divisor = document.divisor(options.divisor)
        outcome = verify_clifford(complex_, divisor)
        report.inputs["divisor"] = divisor
        report.result.update(holds=outcome.holds, special=outcome.special, equality=outcome.equality)
        if outcome.hyperelliptic is not None:
            report.result["hyperelliptic"] = outcome.hyperelliptic
        report.certificate.update(rank=outcome.rank, dual_rank=outcome.dual_rank, degree=outcome.degree)
        report.passed = outcome.holds
    elif options.check == "martens":
        outcome = martens_check(complex_, options.d, options.r, config=config)
        report.inputs.update(d=options.d, r=options.r, refine=config.bn_refinement)
        report.result.update(
            holds=outcome.holds,
            rho=outcome.result.rho,
            bound=outcome.bound,
            hyperelliptic=outcome.hyperelliptic,
            conjecture_instance=outcome.conjecture_instance,
        )
        report.passed = outcome.holds
    else:
        raise UsageError(f"unknown check {options.check}")
