"""Classical limits of presented algebras."""

import logging
from itertools import combinations
from typing import Any, Mapping, Optional

from sympy.polys.domains import QQ_I

from poissonforge.exactcoeff.CoordPoly import Chart, CoordPoly
from poissonforge.exactcoeff.HSeries import DEFAULT_ORDER
from poissonforge.exceptions import StructureException, ValuationException
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.Presentation import INVERSE_SUFFIX, Presentation, RuleTable

logger = logging.getLogger(__name__)


def commutator(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q - q * p


def classical_chart(presentation: Presentation) -> Chart:
    return Chart(presentation.generators, presentation.invertible, presentation.order)


def abelianize(p: NCPoly, chart: Optional[Chart] = None) -> CoordPoly:
    """The hbar**0 part of ``p`` read as a commutative Laurent polynomial."""
    presentation = p.algebra
    chart = chart or classical_chart(presentation)
    terms: dict[tuple[int, ...], Any] = {}
    for word, c in p.terms.items():
        value = c.coeff(0)
        if not value:
            continue
        exps = [0] * chart.dim
        for letter in word:
            if letter in chart.variables:
                exps[chart.index(letter)] += 1
            else:
                exps[chart.index(letter[: -len(INVERSE_SUFFIX)])] -= 1
        key = tuple(exps)
        terms[key] = terms.get(key, QQ_I.zero) + value
    return chart.from_terms(terms)


def semiclassical_bracket(x: NCPoly, y: NCPoly, chart: Optional[Chart] = None) -> CoordPoly:
    """{x_0, y_0} = ((xy - yx) / hbar) mod hbar."""
    c = commutator(x, y)
    if c.valuation < 1:
        raise ValuationException("commutator is not divisible by hbar", index=c.valuation)
    return abelianize(c.divide_by_hbar(1), chart)


def semiclassical_table(presentation: Presentation) -> dict[str, str]:
    chart = classical_chart(presentation)
    table = {}
    for x, y in combinations(presentation.generators, 2):
        value = semiclassical_bracket(presentation.gen(x), presentation.gen(y), chart)
        table[f"{{{x},{y}}}"] = str(value)
    return table


def classical_lie_algebra(presentation: Presentation, name: Optional[str] = None) -> LieAlgebra:
    """Generators span a Lie algebra modulo hbar when their commutators are linear in them."""
    if presentation.invertible:
        raise StructureException(f"{presentation.name} has invertible generators")
    brackets = {}
    for x, y in combinations(presentation.generators, 2):
        c = commutator(presentation.gen(x), presentation.gen(y)).mod_hbar()
        expansion = {}
        for word, coeff in c.terms.items():
            if len(word) != 1:
                raise StructureException(
                    f"[{x},{y}] in {presentation.name} is not linear in the generators modulo hbar",
                    defect=str(c),
                )
            expansion[word[0]] = coeff.coeff(0)
        brackets[(x, y)] = expansion
    return LieAlgebra.from_table(name or f"{presentation.name}_0", presentation.generators, brackets)


def enveloping_algebra(
    algebra: LieAlgebra, order: int = DEFAULT_ORDER, name: Optional[str] = None
) -> Presentation:
    """U(g) with PBW rules e_j e_i -> e_i e_j - [e_i, e_j] for i < j."""
    basis = algebra.basis
    rules = {}
    for i, j in combinations(range(algebra.dim), 2):
        rhs: dict[tuple[str, ...], Any] = {(basis[i], basis[j]): 1}
        for k, c in algebra.bracket_basis(i, j).items():
            rhs[(basis[k],)] = -c
        rules[(basis[j], basis[i])] = rhs
    return Presentation(name or f"U({algebra.name})", basis, rules, order=order)


def quotient(presentation: Presentation, rules: RuleTable, name: Optional[str] = None) -> Presentation:
    return presentation.with_rules(rules, name or f"{presentation.name}/I")


def reduce_mod_hbar(presentation: Presentation) -> Presentation:
    return presentation.mod_hbar()


def classical_relations(presentation: Presentation) -> Mapping[str, str]:
    """Rules of the hbar = 0 algebra, as text."""
    limit = presentation.mod_hbar()
    return {
        limit.format_key(lhs): str(limit.element(rhs)) for lhs, rhs in limit.rules.items()
    }
