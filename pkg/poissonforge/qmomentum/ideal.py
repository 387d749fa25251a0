"""Two-sided ideals given by extra rewrite rules, their invariance and invariants."""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from poissonforge.exactcoeff.linalg import series_kernel
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.Presentation import Presentation, RuleTable, parse_word
from poissonforge.qmomentum.QuantumAction import QuantumAction
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuantumIdeal:
    """The ideal generated by lhs − rhs for each extra rule.

    Membership is tested by reduction in the quotient presentation, which is
    sound when the enlarged rule set is confluent.
    """

    name: str
    ambient: Presentation
    quotient: Presentation
    generators: tuple[NCPoly, ...]

    @classmethod
    def from_rules(cls, ambient: Presentation, rules: RuleTable, name: Optional[str] = None) -> "QuantumIdeal":
        name = name or f"I({ambient.name})"
        quotient = ambient.with_rules(rules, f"{ambient.name}/{name}")
        added = {parse_word(lhs) if isinstance(lhs, str) else tuple(lhs) for lhs in rules}
        generators = tuple(
            ambient.word(*lhs) - ambient.element(rhs) for lhs, rhs in quotient.rules.items() if lhs in added
        )
        return cls(name, ambient, quotient, generators)

    def contains(self, p: NCPoly) -> bool:
        return self.quotient.element(p.terms, p.order).is_zero

    def check_confluence(self, degree: int) -> CheckResult:
        return self.quotient.check_confluence(degree)


def check_ideal_invariance(action: QuantumAction, ideal: QuantumIdeal, degree: int) -> CheckResult:
    """Φ(ξ)(g J h) ∈ I for letters ξ, ideal generators J and monomials g, h."""
    target = action.target
    monomials = target.normal_monomials(degree)
    defects = []
    for j, J in enumerate(ideal.generators):
        for g in monomials:
            for h in monomials:
                if len(g) + len(h) > degree:
                    continue
                element = target.word(*g) * J * target.word(*h)
                for letter in action.group.letters:
                    image = action.apply_word((letter,), element)
                    if not ideal.contains(image):
                        label = f"{letter}({target.format_key(g)}·J{j}·{target.format_key(h)})"
                        defects.append((label, ideal.quotient.element(image.terms, image.order)))
    return CheckResult.combine(
        "ideal_invariance",
        [ideal.check_confluence(max(degree, 2) + 1), CheckResult.from_defects("invariance", defects)],
        ideal=ideal.name,
    )


def _deviation(action: QuantumAction, algebra: Presentation, letter: str, f: NCPoly) -> NCPoly:
    return action.on_quotient((letter,), f, algebra) - f.scale(action.epsilon(letter))


def invariant_subalgebra(
    action: QuantumAction, degree: int, ideal: Optional[QuantumIdeal] = None
) -> tuple[list[NCPoly], CheckResult]:
    """Joint kernel of Φ(ξ) − ε(ξ) on the degree ≤ d part, with product closure verified."""
    algebra = ideal.quotient if ideal is not None else action.target
    monomials = algebra.normal_monomials(degree)
    images = [
        [_deviation(action, algebra, letter, algebra.word(*w)) for w in monomials]
        for letter in action.group.letters
    ]
    order = min([p.order for row in images for p in row] + [algebra.order])
    matrix = []
    for row in images:
        keys = sorted({k for p in row for k in p.terms}, key=algebra.sort_key)
        for key in keys:
            matrix.append([p.coefficient(key).truncate(order) for p in row])
    if matrix:
        vectors = series_kernel(matrix, len(monomials), order)
        basis = [algebra.element(dict(zip(monomials, v))) for v in vectors]
    else:
        basis = [algebra.word(*w) for w in monomials]
    logger.debug("%s: %d invariants up to degree %d", algebra.name, len(basis), degree)

    defects = []
    for i, u in enumerate(basis):
        for k, v in enumerate(basis):
            if u.degree + v.degree > degree:
                continue
            for letter in action.group.letters:
                deviation = _deviation(action, algebra, letter, u * v)
                if not deviation.is_zero:
                    defects.append((f"{letter}(u{i}·u{k})", deviation))
    closure = CheckResult.from_defects(
        "invariants_closed", defects, basis=[str(b) for b in basis], degree=degree
    )
    return basis, closure


def check_quantum_reduction(action: QuantumAction, ideal: QuantumIdeal, degree: int) -> CheckResult:
    invariance = check_ideal_invariance(action, ideal, degree)
    _, closure = invariant_subalgebra(action, degree, ideal)
    return CheckResult.combine("quantum_reduction", [invariance, closure], **closure.details)


def check_identities(algebra: Presentation, identities: Sequence[tuple[str, NCPoly, NCPoly]]) -> CheckResult:
    defects = [(label, lhs - rhs) for label, lhs, rhs in identities if lhs != rhs]
    return CheckResult.from_defects(f"{algebra.name}_identities", defects)
