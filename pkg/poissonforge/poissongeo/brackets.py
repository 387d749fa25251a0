"""Poisson brackets, Jacobi and Casimir checks, Hamiltonian fields, Koszul bracket."""

import logging
from itertools import combinations
from typing import Callable, Optional

from poissonforge.exactcoeff.CoordPoly import CoordPoly
from poissonforge.exceptions import InputException
from poissonforge.poissongeo.PolyTensors import PolyBivector, PolyOneForm, PolyVectorField
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)

Reducer = Callable[[CoordPoly], CoordPoly]


def poisson_bracket(pi: PolyBivector, f: CoordPoly, g: CoordPoly) -> CoordPoly:
    """{f, g} = π(df, dg)."""
    if f.chart != pi.chart or g.chart != pi.chart:
        raise InputException("bracket arguments must live on the bivector's chart")
    return pi.contract(PolyOneForm.exact(f), PolyOneForm.exact(g))


def jacobiator(pi: PolyBivector, i: int, j: int, k: int) -> CoordPoly:
    """Σ_h π^{hi}∂_h π^{jk} + π^{hj}∂_h π^{ki} + π^{hk}∂_h π^{ij}."""
    names = pi.chart.variables
    total = pi.chart.zero
    for h, name in enumerate(names):
        total = (
            total
            + pi.entry(h, i) * pi.entry(j, k).diff(name)
            + pi.entry(h, j) * pi.entry(k, i).diff(name)
            + pi.entry(h, k) * pi.entry(i, j).diff(name)
        )
    return total


def check_jacobi_coords(pi: PolyBivector) -> CheckResult:
    names = pi.chart.variables
    for i, j, k in combinations(range(pi.chart.dim), 3):
        defect = jacobiator(pi, i, j, k)
        if not defect.is_zero:
            logger.debug("Jacobi defect at (%s,%s,%s): %s", names[i], names[j], names[k], defect)
            return CheckResult.from_defects(
                "jacobi_coords", [(f"({names[i]},{names[j]},{names[k]})", defect)]
            )
    return CheckResult.from_defects("jacobi_coords", [])


def schouten_bracket(pi: PolyBivector, rho: PolyBivector) -> dict[tuple[int, int, int], CoordPoly]:
    """[π, ρ] on u < v < w; [π, π] is twice the Jacobiator, so it vanishes iff π is Poisson."""
    names = pi.chart.variables
    result = {}
    for i, j, k in combinations(range(pi.chart.dim), 3):
        total = pi.chart.zero
        for h, name in enumerate(names):
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                total = total + pi.entry(h, a) * rho.entry(b, c).diff(name)
                total = total + rho.entry(h, a) * pi.entry(b, c).diff(name)
        if not total.is_zero:
            result[(i, j, k)] = total
    return result


def check_schouten(pi: PolyBivector) -> CheckResult:
    names = pi.chart.variables
    defects = [
        (f"[π,π]({names[i]},{names[j]},{names[k]})", value)
        for (i, j, k), value in sorted(schouten_bracket(pi, pi).items())
    ]
    return CheckResult.from_defects("schouten", defects)


def hamiltonian_field(pi: PolyBivector, f: CoordPoly, sign: int = 1) -> PolyVectorField:
    """X_f(v) = sign·{v, f} for every chart variable v."""
    chart = pi.chart
    return PolyVectorField(
        chart, tuple(poisson_bracket(pi, chart.var(v), f) * sign for v in chart.variables)
    )


def casimir_check(
    pi: PolyBivector, f: CoordPoly, reduce: Optional[Reducer] = None
) -> CheckResult:
    """{f, v} = 0 for every chart variable, after the optional constraint reduction."""
    defects = []
    for v in pi.chart.variables:
        value = poisson_bracket(pi, f, pi.chart.var(v))
        if reduce is not None:
            value = reduce(value)
        if not value.is_zero:
            defects.append((f"{{{f},{v}}}", value))
    return CheckResult.from_defects("casimir", defects)


def koszul_bracket(pi: PolyBivector, alpha: PolyOneForm, beta: PolyOneForm) -> PolyOneForm:
    """[α,β]_π = L_{π♯α}β − L_{π♯β}α − d(π(α,β))."""
    return (
        beta.lie_derivative(pi.sharp(alpha))
        - alpha.lie_derivative(pi.sharp(beta))
        - PolyOneForm.exact(pi.contract(alpha, beta))
    )


def check_sharp_homomorphism(
    pi: PolyBivector, alpha: PolyOneForm, beta: PolyOneForm
) -> CheckResult:
    """π♯[α,β]_π = [π♯α, π♯β]."""
    defect = pi.sharp(koszul_bracket(pi, alpha, beta)) - pi.sharp(alpha).bracket(pi.sharp(beta))
    return CheckResult.from_defects(
        "sharp_homomorphism", [] if defect.is_zero else [("π♯[α,β]−[π♯α,π♯β]", defect)]
    )


def bracket_table(pi: PolyBivector, reduce: Optional[Reducer] = None) -> dict[str, str]:
    names = pi.chart.variables
    table = {}
    for u, v in combinations(range(pi.chart.dim), 2):
        value = pi.entry(u, v)
        if reduce is not None:
            value = reduce(value)
        table[f"{{{names[u]},{names[v]}}}"] = str(value)
    return table
