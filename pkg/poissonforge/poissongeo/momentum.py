"""Poisson actions and momentum map identities."""

import logging
from itertools import combinations, product
from typing import Mapping

from poissonforge.exactcoeff.CoordPoly import CoordPoly
from poissonforge.exactcoeff.scalars import HALF
from poissonforge.liebialg.Cobracket import Cobracket
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.poissongeo.brackets import hamiltonian_field, koszul_bracket, poisson_bracket
from poissonforge.poissongeo.groups import check_lie_homomorphism
from poissonforge.poissongeo.PolyTensors import (
    PolyBivector,
    PolyOneForm,
    PolyTwoForm,
    PolyVectorField,
)
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)

Fields = Mapping[str, PolyVectorField]


def induced_bivector(
    algebra: LieAlgebra, fields: Fields, t_components: Mapping[tuple[int, int], object]
) -> PolyBivector:
    """(Σ t^{jk} e_j⊗e_k)_M with components Σ t^{jk} X_j^u X_k^v."""
    chart = next(iter(fields.values())).chart
    names = algebra.basis
    comps = {}
    for u, v in combinations(range(chart.dim), 2):
        total = chart.zero
        for (j, k), c in t_components.items():
            total = total + fields[names[j]].components[u] * fields[names[k]].components[v] * c
        comps[(u, v)] = total
    return PolyBivector(chart, comps)


def poisson_action_defects(
    pi: PolyBivector, algebra: LieAlgebra, fields: Fields, d: Cobracket
) -> CheckResult:
    """L_{ξ_M} π = −(δ(ξ))_M for every basis element."""
    defects = []
    for i, name in enumerate(algebra.basis):
        lhs = pi.lie_derivative(fields[name])
        rhs = -induced_bivector(algebra, fields, d.image(i).components)
        if lhs != rhs:
            defects.append((f"L_{name}π + δ({name})_M", lhs - rhs))
    return CheckResult.from_defects("poisson_action", defects)


def _variants(algebra: LieAlgebra, fields: Fields) -> dict[str, dict[str, PolyVectorField]]:
    names = list(algebra.basis)
    assignments = {"identity": names}
    if len(names) == 2:
        assignments["swap"] = names[::-1]
    variants = {}
    for (label, order), sign in product(assignments.items(), (1, -1)):
        variants[f"{label},{'+' if sign > 0 else '-'}1"] = {
            target: fields[source].scale(sign) for target, source in zip(names, order)
        }
    return variants


def check_poisson_action(
    pi: PolyBivector,
    algebra: LieAlgebra,
    fields: Fields,
    d: Cobracket,
    with_variants: bool = False,
) -> CheckResult:
    """Homomorphism first, then the Poisson action condition.

    With ``with_variants`` the generator-to-basis assignments and both global
    signs are evaluated too and listed under ``details["variants"]``.
    """
    hom = check_lie_homomorphism(algebra, fields)
    action = poisson_action_defects(pi, algebra, fields, d)
    result = CheckResult.combine("check_poisson_action", [hom, action])
    if with_variants:
        table = {}
        for label, variant in _variants(algebra, fields).items():
            table[label] = {
                "homomorphism": check_lie_homomorphism(algebra, variant).passed,
                "poisson": poisson_action_defects(pi, algebra, variant, d).passed,
            }
        result.details["variants"] = table
        result.details["passing_variants"] = [
            k for k, v in table.items() if v["homomorphism"] and v["poisson"]
        ]
    return result


def _pair_combination(algebra: LieAlgebra, forms: Mapping[str, PolyOneForm], vec) -> PolyOneForm:
    chart = next(iter(forms.values())).chart
    total = PolyOneForm.zero(chart)
    for k, c in vec.items():
        total = total + forms[algebra.basis[k]].scale(c)
    return total


def check_infinitesimal_mm(
    pi: PolyBivector,
    algebra: LieAlgebra,
    d: Cobracket,
    alpha: Mapping[str, PolyOneForm],
) -> CheckResult:
    """α_{[ξ,η]} = [α_ξ, α_η]_π and dα_ξ + ½ α∧α∘δ(ξ) = 0.

    The variant dα_ξ = α∧α∘δ(ξ) is reported in the details.
    """
    names = algebra.basis
    bracket_defects = []
    for i, j in combinations(range(algebra.dim), 2):
        lhs = _pair_combination(algebra, alpha, algebra.bracket_basis(i, j))
        rhs = koszul_bracket(pi, alpha[names[i]], alpha[names[j]])
        if lhs != rhs:
            bracket_defects.append((f"α_[{names[i]},{names[j]}] − [α,α]_π", rhs - lhs))
    mc_defects, variant = [], []
    chart = pi.chart
    for i, name in enumerate(names):
        quadratic = PolyTwoForm(chart, {})
        for (j, k), c in d.image(i).components.items():
            quadratic = quadratic + alpha[names[j]].wedge(alpha[names[k]]).scale(c)
        dalpha = alpha[name].d()
        lhs = dalpha + quadratic.scale(HALF)
        if not lhs.is_zero:
            mc_defects.append((f"dα_{name} + ½α∧α∘δ({name})", lhs))
        if not (dalpha - quadratic).is_zero:
            variant.append(name)
    return CheckResult.combine(
        "check_infinitesimal_mm",
        [
            CheckResult.from_defects("bracket", bracket_defects),
            CheckResult.from_defects("maurer_cartan", mc_defects),
        ],
        variant_holds=not variant,
    )


def classical_mm_check(
    pi: PolyBivector,
    algebra: LieAlgebra,
    hamiltonians: Mapping[str, CoordPoly],
    fields: Fields,
    sign: int = 1,
) -> CheckResult:
    """ξ_M = X_{H_ξ}, and c(ξ,η) = {H_ξ,H_η} − H_{[ξ,η]} must be constant."""
    names = algebra.basis
    generated = []
    for name in names:
        expected = hamiltonian_field(pi, hamiltonians[name], sign)
        if expected != fields[name]:
            generated.append((f"{name}_M − X_H", fields[name] - expected))
    cocycle = {}
    constancy = []
    for i, j in combinations(range(algebra.dim), 2):
        value = poisson_bracket(pi, hamiltonians[names[i]], hamiltonians[names[j]])
        for k, c in algebra.bracket_basis(i, j).items():
            value = value - hamiltonians[names[k]] * c
        label = f"c({names[i]},{names[j]})"
        cocycle[label] = str(value)
        if not value.is_constant:
            constancy.append((label, value))
    return CheckResult.combine(
        "classical_mm",
        [
            CheckResult.from_defects("generates_action", generated),
            CheckResult.from_defects("cocycle_constant", constancy),
        ],
        cocycle=cocycle,
        cocycle_zero=all(v == "0" for v in cocycle.values()),
    )


def heisenberg_obstruction(
    pi: PolyBivector, alpha: Mapping[str, PolyOneForm], xi: str, eta: str, zeta: str
) -> CheckResult:
    """c = π(α_ξ, α_η) must be constant; a momentum map needs c = 0."""
    c = pi.contract(alpha[xi], alpha[eta])
    d_zeta = alpha[zeta].d() == alpha[xi].wedge(alpha[eta])
    defects = []
    if not c.is_constant:
        defects.append(("π(α_ξ,α_η) not constant", c))
    elif not c.is_zero:
        defects.append(("c", c))
    return CheckResult(
        name="heisenberg_obstruction",
        passed=not defects,
        defects=[(label, str(value)) for label, value in defects],
        details={"c": str(c), "constant": c.is_constant, "d_alpha_zeta_matches": d_zeta},
    )


def deformation_identities(
    pi: PolyBivector,
    algebra: LieAlgebra,
    fields: Fields,
    d: Cobracket,
    x: Mapping[str, CoordPoly],
) -> tuple[CheckResult, CheckResult]:
    """First: ξ_M X(η) − η_M X(ξ) = X([ξ,η]).

    Second: {X(ξ), v} = Σ_{jk} X(e_j) δ(ξ)_{jk} (e_k)_M(v), i.e. {X(ξ),·} = −L_{ad*_X ξ}.
    """
    names = algebra.basis
    first = []
    for i, j in combinations(range(algebra.dim), 2):
        lhs = fields[names[i]].apply(x[names[j]]) - fields[names[j]].apply(x[names[i]])
        rhs = pi.chart.zero
        for k, c in algebra.bracket_basis(i, j).items():
            rhs = rhs + x[names[k]] * c
        if lhs != rhs:
            first.append((f"({names[i]},{names[j]})", lhs - rhs))
    second = []
    for i, name in enumerate(names):
        for v in pi.chart.variables:
            var = pi.chart.var(v)
            lhs = poisson_bracket(pi, x[name], var)
            rhs = pi.chart.zero
            for (j, k), c in d.image(i).components.items():
                rhs = rhs + x[names[j]] * fields[names[k]].apply(var) * c
            if lhs != rhs:
                second.append((f"{{X({name}),{v}}}", lhs - rhs))
    return (
        CheckResult.from_defects("deformation_first", first),
        CheckResult.from_defects("deformation_second", second),
    )
