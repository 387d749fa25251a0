"""Verification of quantum actions on monomials up to a degree bound."""

import logging
from typing import Optional, Sequence

from poissonforge.exactcoeff.linalg import series_solve
from poissonforge.exceptions import InputException, ValuationException
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.Presentation import Word
from poissonforge.ncalg.semiclassical import abelianize, classical_chart, semiclassical_bracket
from poissonforge.qmomentum.NCOneForm import endomorphisms_agree
from poissonforge.qmomentum.QuantumAction import QuantumAction, RelationClaim
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)


def _pairs(monomials: Sequence[Word], degree: int):
    for f in monomials:
        for g in monomials:
            if f and g and len(f) + len(g) <= degree:
                yield f, g


def check_module_algebra(action: QuantumAction, degree: int) -> CheckResult:
    """Φ(ξ)(fg) = m∘(Φ⊗Φ)(Δξ)(f⊗g) for every letter ξ."""
    if action.coproduct is None:
        raise InputException(f"{action.name} declares no coproduct")
    target = action.target
    monomials = target.normal_monomials(degree)
    defects = []
    for letter in action.group.letters:
        image = action.coproduct((letter,))
        for f_word, g_word in _pairs(monomials, degree):
            f, g = target.word(*f_word), target.word(*g_word)
            lhs = action.apply_word((letter,), f * g)
            rhs = target.zero
            for (u, v), c in image.terms.items():
                rhs = rhs + (action.apply_word(u, f) * action.apply_word(v, g)).scale(c)
            if lhs != rhs:
                defects.append((f"{letter}({target.format_key(f_word)}·{target.format_key(g_word)})", lhs - rhs))
    return CheckResult.from_defects("module_algebra", defects, degree=degree)


def check_group_relations(action: QuantumAction, degree: int) -> CheckResult:
    """The generator actions satisfy the rewrite rules of the quantum group."""
    group, target = action.group, action.target
    defects = []
    for lhs, rhs in group.all_rules.items():
        for word in target.normal_monomials(degree):
            f = target.word(*word)
            left = action.apply_word(lhs, f)
            right = target.zero
            for w, c in rhs.items():
                right = right + action.apply_word(w, f).scale(c)
            if left != right:
                defects.append((f"{group.format_key(lhs)} on {target.format_key(word)}", left - right))
                break
    return CheckResult.from_defects("group_relations", defects)


def check_relation(action: QuantumAction, claim: RelationClaim, degree: int) -> CheckResult:
    """Φ(lhs) = hbar**-k Φ(rhs) on target monomials up to ``degree``."""
    target = action.target
    defects = []
    for word in target.normal_monomials(degree):
        f = target.word(*word)
        left = action.apply(claim.lhs, f)
        right = action.apply(claim.rhs, f)
        if claim.hbar_divisor:
            if right.valuation < claim.hbar_divisor:
                defects.append((target.format_key(word), f"{right} is not divisible by hbar**{claim.hbar_divisor}"))
                continue
            right = right.divide_by_hbar(claim.hbar_divisor)
        if left != right:
            defects.append((target.format_key(word), left - right))
    return CheckResult.from_defects(
        claim.label, defects, lhs=str(claim.lhs), rhs=str(claim.rhs), hbar_divisor=claim.hbar_divisor
    )


def _sorted_words(action: QuantumAction, span_degree: int, exclude) -> list[Word]:
    group = action.group
    rank = {g: n for n, g in enumerate(group.letters)}
    words = []
    for w in group.normal_monomials(span_degree):
        ranks = [rank[g] for g in w]
        if ranks == sorted(ranks) and w not in exclude:
            words.append(w)
    return words


def solve_relation(
    action: QuantumAction, lhs: NCPoly, degree: int, span_degree: int = 2
) -> Optional[NCPoly]:
    """Express Φ(lhs) through Φ of ordered group words not occurring in ``lhs``.

    Returns None when no such combination matches on the tested monomials.
    """
    target, group = action.target, action.group
    unknowns = _sorted_words(action, span_degree, set(lhs.terms))
    columns: list[list[NCPoly]] = [[] for _ in unknowns]
    values: list[NCPoly] = []
    for word in target.normal_monomials(degree):
        f = target.word(*word)
        values.append(action.apply(lhs, f))
        for j, w in enumerate(unknowns):
            columns[j].append(action.apply_word(w, f))
    order = min([p.order for p in values] + [p.order for col in columns for p in col] + [group.order])
    matrix, rhs = [], []
    for i, value in enumerate(values):
        keys = set(value.terms)
        for col in columns:
            keys.update(col[i].terms)
        for key in sorted(keys, key=target.sort_key):
            matrix.append([col[i].coefficient(key).truncate(order) for col in columns])
            rhs.append(value.coefficient(key).truncate(order))
    solution = series_solve(matrix, rhs, len(unknowns), order)
    if solution is None:
        return None
    return group.element({w: c for w, c in zip(unknowns, solution)})


def check_action_lie_hom(action: QuantumAction, degree: int, diagnose: bool = False) -> CheckResult:
    """Group rules and every derived relation hold for the generator actions."""
    parts = [check_group_relations(action, degree)]
    corrected = {}
    for claim in action.relations:
        if claim.claimed:
            continue
        result = check_relation(action, claim, degree)
        parts.append(result)
        if not result.passed and diagnose:
            found = solve_relation(action, claim.lhs, degree)
            corrected[claim.label] = str(found) if found is not None else None
    details = {"corrected": corrected} if corrected else {}
    return CheckResult.combine("action_lie_homomorphism", parts, **details)


def check_momentum_map(action: QuantumAction, degree: int) -> CheckResult:
    """μ(ξ)♯ = Φ(ξ) for every letter with a declared momentum form."""
    parts = [
        endomorphisms_agree(
            form.sharp(),
            action.generators[letter],
            action.target,
            action.target.normal_monomials(degree),
            f"momentum_{letter}",
        )
        for letter, form in action.momentum.items()
    ]
    return CheckResult.combine("momentum_map", parts)


def check_semiclassical_limit(action: QuantumAction) -> CheckResult:
    """Φ(ξ)g mod hbar = Σ a0{b0, g0} on target generators, for μ(ξ) = Σ a db."""
    target = action.target
    chart = classical_chart(target)
    defects = []
    for letter, form in action.momentum.items():
        for g in target.generators:
            x = target.gen(g)
            try:
                quantum = abelianize(action.generators[letter].apply(x), chart)
                classical = chart.zero
                for a, b in form.pairs():
                    classical = classical + abelianize(a, chart) * semiclassical_bracket(b, x, chart)
            except ValuationException as e:
                defects.append((f"{letter}({g})", str(e)))
                continue
            if quantum != classical:
                defects.append((f"{letter}({g})", quantum - classical))
    return CheckResult.from_defects("semiclassical_limit", defects)
