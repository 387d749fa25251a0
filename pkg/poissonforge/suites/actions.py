from typing import Iterator, Sequence

from poissonforge.CheckSuite import CheckSuite
from poissonforge.ncalg.Presentation import Presentation
from poissonforge.qmomentum.checks import (
    check_action_lie_hom,
    check_module_algebra,
    check_momentum_map,
    check_relation,
    check_semiclassical_limit,
    solve_relation,
)
from poissonforge.qmomentum.cobar import check_coboundary_squares_to_zero
from poissonforge.qmomentum.ideal import (
    QuantumIdeal,
    check_identities,
    check_ideal_invariance,
    invariant_subalgebra,
)
from poissonforge.qmomentum.QuantumAction import QuantumAction
from poissonforge.report import CheckRecord, CheckResult
from poissonforge.specfile.models import ActionSpec, IdentitySpec, QuantumReductionSpec


def identity_triples(algebra: Presentation, identities: Sequence[IdentitySpec]):
    return [(i.label, algebra.poly(i.lhs), algebra.poly(i.rhs)) for i in identities]


class ActionSuite(CheckSuite):
    """Quantum group actions by ħ-differential operators and their quantum momentum maps"""

    sections = ("actions",)
    fixture_files = ("actions.json",)

    @classmethod
    def name(cls) -> str:
        return "check-action"

    def check(self, entry: ActionSpec) -> Iterator[CheckRecord]:
        action = self.loader.quantum_action(entry.name)
        degree = self.settings.degree
        confluence, runtime = self.measure(action.target.check_confluence, self.settings.overlap_degree)
        yield self.record(entry, "confluence", confluence, runtime)

        if action.coproduct is not None:
            result, runtime = self.measure(check_module_algebra, action, degree)
            yield self.record(entry, "module_algebra", result, runtime)
        result, runtime = self.measure(check_action_lie_hom, action, degree, True)
        yield self.record(entry, "lie_homomorphism", result, runtime)
        yield from self.check_claimed_relations(entry, action)

        if action.momentum:
            result, runtime = self.measure(check_momentum_map, action, degree)
            yield self.record(entry, "momentum_map", result, runtime)
            yield self.record(entry, "semiclassical_limit", check_semiclassical_limit(action))
        if entry.identities:
            result = check_identities(action.target, identity_triples(action.target, entry.identities))
            yield self.record(entry, "identities", result)
        for n, claim in enumerate(entry.multi_action):
            value = action.multi_apply(claim.letters, [action.target.poly(a) for a in claim.arguments])
            expected = action.target.poly(claim.value)
            result = CheckResult.from_defects(
                "multi_action", [] if value == expected else [("Φ(⊗ξ)(f…) − stated", value - expected)]
            )
            yield self.record(entry, f"multi_action[{n}]", result, details={"value": str(value)})
        if entry.coboundary_length and action.coproduct is not None:
            result, runtime = self.measure(check_coboundary_squares_to_zero, action.coproduct, entry.coboundary_length)
            yield self.record(entry, "cobar", result, runtime)

    def check_claimed_relations(self, entry: ActionSpec, action: QuantumAction) -> Iterator[CheckRecord]:
        degree = self.settings.degree
        for relation in action.relations:
            if not relation.claimed:
                continue
            result = check_relation(action, relation, degree)
            details = {"lhs": str(relation.lhs), "rhs": str(relation.rhs)}
            if not result.passed:
                found = solve_relation(action, relation.lhs, degree)
                details["derived"] = str(found) if found is not None else None
            yield self.claim(entry, f"relation[{relation.label}]", result.passed, result.first_defect, details)


class QuantumReductionSuite(CheckSuite):
    """Quantum Hamiltonian reduction: invariant ideals and the invariant part of the quotient"""

    sections = ("quantum_reductions",)
    fixture_files = ("actions.json",)

    @classmethod
    def name(cls) -> str:
        return "qreduce"

    def check(self, entry: QuantumReductionSpec) -> Iterator[CheckRecord]:
        action = self.loader.quantum_action(entry.action)
        target = action.target
        ideal = QuantumIdeal.from_rules(target, self.loader.rule_table(target, entry.ideal), entry.name)
        degree = self.settings.degree

        result, runtime = self.measure(check_ideal_invariance, action, ideal, degree)
        yield self.record(entry, "ideal_invariance", result, runtime, {"generators": [str(g) for g in ideal.generators]})
        (basis, closure), runtime = self.measure(invariant_subalgebra, action, degree, ideal)
        yield self.record(entry, "invariants", closure, runtime, {"count": len(basis)})
        if entry.identities:
            yield self.record(entry, "identities", check_identities(target, identity_triples(target, entry.identities)))
        for label, lhs, rhs in identity_triples(target, entry.claimed_identities):
            yield self.claim(
                entry,
                f"claimed_identity[{label}]",
                lhs == rhs,
                None if lhs == rhs else f"lhs − rhs = {lhs - rhs}",
                {"lhs": str(lhs), "rhs": str(rhs)},
            )
