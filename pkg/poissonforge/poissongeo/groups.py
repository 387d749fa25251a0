"""Poisson-Lie group bivectors, multiplicativity, Maurer–Cartan forms and dressing fields."""

import logging
from itertools import combinations, product
from typing import Optional

from sympy.polys.domains import QQ_I

from poissonforge.exactcoeff.CoordPoly import CoordPoly
from poissonforge.exactcoeff.linalg import solve
from poissonforge.exactcoeff.scalars import HALF
from poissonforge.exceptions import InputException
from poissonforge.liebialg.Cobracket import Cobracket, RMatrix
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.liebialg.Tensor import Tensor
from poissonforge.poissongeo.MatrixGroupModel import MatrixGroupModel, matmul
from poissonforge.poissongeo.PolyTensors import (
    PolyBivector,
    PolyOneForm,
    PolyTwoForm,
    PolyVectorField,
)
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)


def _r_indices(model: MatrixGroupModel, r: RMatrix) -> dict[tuple[int, int], object]:
    if r.algebra.basis != model.algebra.basis:
        raise InputException(
            f"r-matrix over {r.algebra.name} does not match the algebra of {model.name}"
        )
    return dict(r.antisymmetric.components)


def _bivector_from_fields(
    model: MatrixGroupModel, coeffs: dict, fields: list[PolyVectorField]
) -> PolyBivector:
    chart = model.chart
    comps = {}
    for u, v in combinations(range(chart.dim), 2):
        total = chart.zero
        for (i, j), a in coeffs.items():
            total = total + fields[i].components[u] * fields[j].components[v] * a
        comps[(u, v)] = total
    return PolyBivector(chart, comps)


def pl_group_bivector(model: MatrixGroupModel, r: RMatrix) -> PolyBivector:
    """π(g) = λ_g a − ρ_g a for the antisymmetric part a of r."""
    a = _r_indices(model, r)
    dim = model.algebra.dim
    left = [model.left_field(i) for i in range(dim)]
    right = [model.right_field(i) for i in range(dim)]
    return _bivector_from_fields(model, a, left) - _bivector_from_fields(model, a, right)


def left_invariant_bivector(model: MatrixGroupModel, r: RMatrix) -> PolyBivector:
    a = _r_indices(model, r)
    return _bivector_from_fields(model, a, [model.left_field(i) for i in range(model.algebra.dim)])


def vanishes_at_identity(model: MatrixGroupModel, pi: PolyBivector) -> bool:
    point = model.identity_point()
    return all(not c.evaluate(point) for c in pi.components.values())


def check_multiplicative(model: MatrixGroupModel, pi: PolyBivector) -> CheckResult:
    """π(gh) = λ_g π(h) + ρ_h π(g) as an identity in two copies of the entries."""
    chart, g_vars, h_vars = model.doubled()
    n = model.size
    g = [[e.subs(g_vars, chart) for e in row] for row in model.entries]
    h = [[e.subs(h_vars, chart) for e in row] for row in model.entries]
    gh = matmul(g, h, chart)
    product_vars = {v: gh[p][q] for v, (p, q) in model.positions.items()}

    def at(pt: dict, i: Optional[int], j: Optional[int]) -> CoordPoly:
        if i is None or j is None:
            return chart.zero
        return pi.entry(i, j).subs(pt, chart)

    names = model.chart.variables
    defects = []
    for u, v in combinations(range(model.chart.dim), 2):
        p, q = model.positions[names[u]]
        r, s = model.positions[names[v]]
        lhs = pi.entry(u, v).subs(product_vars, chart)
        left = chart.zero
        right = chart.zero
        for k, l in product(range(n), repeat=2):
            if not (g[p][k].is_zero or g[r][l].is_zero):
                left = left + g[p][k] * g[r][l] * at(
                    h_vars, model.variable_at(k, q), model.variable_at(l, s)
                )
            if not (h[k][q].is_zero or h[l][s].is_zero):
                right = right + h[k][q] * h[l][s] * at(
                    g_vars, model.variable_at(p, k), model.variable_at(r, l)
                )
        defect = lhs - left - right
        if not defect.is_zero:
            defects.append((f"({names[u]},{names[v]})", defect))
    return CheckResult.from_defects("multiplicative", defects)


def linearize_at_identity(model: MatrixGroupModel, pi: PolyBivector) -> Cobracket:
    """δ(ξ) = d_e π(ξ), expressed on the algebra basis."""
    algebra = model.algebra
    chart = model.chart
    names = chart.variables
    point = model.identity_point()
    pairs = list(combinations(range(algebra.dim), 2))
    var_pairs = list(combinations(range(chart.dim), 2))

    def basis_entry(i: int, u: int):
        p, q = model.positions[names[u]]
        return model.basis_matrices[i][p][q]

    rows = [
        [basis_entry(i, u) * basis_entry(j, v) - basis_entry(j, u) * basis_entry(i, v) for i, j in pairs]
        for u, v in var_pairs
    ]
    images = {}
    for k in range(algebra.dim):
        direction = PolyVectorField(
            chart, tuple(chart.const(basis_entry(k, u)) for u in range(chart.dim))
        )
        rhs = [direction.apply(pi.entry(u, v)).evaluate(point) for u, v in var_pairs]
        solution = solve(rows, rhs, len(pairs))
        if solution is None:
            raise InputException(f"linearization of the bivector on {model.name} leaves g∧g")
        t = Tensor.zero(algebra, 2)
        for (i, j), c in zip(pairs, solution):
            if c:
                t = t + Tensor.wedge(algebra, i, j, c)
        images[k] = t
    return Cobracket(algebra, images, strict=False)


def maurer_cartan_forms(
    model: MatrixGroupModel, d: Optional[Cobracket] = None
) -> tuple[dict[str, PolyOneForm], CheckResult]:
    """θ from g⁻¹dg on the basis matrices.

    With ``d`` the forms are labelled by ``d.algebra`` and the structure
    constants of the group are read as C^k_{ij} = d[k][i][j]; otherwise the
    group's own algebra is used. The structural identity is
    dθ_k + ½ Σ C^k_{ij} θ_i∧θ_j = 0; the variant dθ_k = Σ C^k_{ij} θ_i∧θ_j is
    reported in the details.
    """
    chart = model.chart
    algebra = model.algebra
    if d is not None and d.algebra.dim != algebra.dim:
        raise InputException("cobracket dimension does not match the group")
    labels = d.algebra.basis if d is not None else algebra.basis
    inverse = model.inverse
    columns = []
    for v in chart.variables:
        dg = [[e.diff(v) for e in row] for row in model.entries]
        columns.append(model.decompose(matmul(inverse, dg, chart)))
    forms = [
        PolyOneForm(chart, tuple(columns[u][k] for u in range(chart.dim)))
        for k in range(algebra.dim)
    ]

    def constant(k: int, i: int, j: int):
        if d is not None:
            return d.component(k, i, j)
        return algebra.structure(i, j, k)

    structural, variant = [], []
    for k, theta in enumerate(forms):
        quadratic = PolyTwoForm(chart, {})
        for i, j in product(range(algebra.dim), repeat=2):
            c = constant(k, i, j)
            if c:
                quadratic = quadratic + forms[i].wedge(forms[j]).scale(c)
        dtheta = theta.d()
        lhs = dtheta + quadratic.scale(HALF)
        if not lhs.is_zero:
            structural.append((f"dθ_{labels[k]} + ½θ∧θ∘δ", lhs))
        rec = dtheta - quadratic
        if not rec.is_zero:
            variant.append((f"dθ_{labels[k]} − θ∧θ∘δ", rec))

    invariance = []
    for i in range(algebra.dim):
        field = model.left_field(i)
        for k, theta in enumerate(forms):
            value = theta.contract(field)
            expected = QQ_I.one if i == k else QQ_I.zero
            if value != chart.const(expected):
                invariance.append((f"θ_{labels[k]}(X^L_{algebra.basis[i]})", value))

    result = CheckResult.combine(
        "maurer_cartan",
        [
            CheckResult.from_defects("structural", structural),
            CheckResult.from_defects("left_invariant", invariance),
        ],
        variant_holds=not variant,
        forms={labels[k]: str(f) for k, f in enumerate(forms)},
    )
    return {labels[k]: f for k, f in enumerate(forms)}, result


def check_lie_homomorphism(
    algebra: LieAlgebra, fields: dict[str, PolyVectorField]
) -> CheckResult:
    """[X_ξ, X_η] = X_{[ξ,η]} on basis pairs."""
    defects = []
    names = algebra.basis
    for i, j in combinations(range(algebra.dim), 2):
        lhs = fields[names[i]].bracket(fields[names[j]])
        rhs = PolyVectorField.zero(lhs.chart)
        for k, c in algebra.bracket_basis(i, j).items():
            rhs = rhs + fields[names[k]].scale(c)
        if lhs != rhs:
            defects.append((f"[{names[i]},{names[j]}]", lhs - rhs))
    return CheckResult.from_defects("lie_homomorphism", defects)


def dressing_fields(
    pi: PolyBivector, algebra: LieAlgebra, forms: dict[str, PolyOneForm]
) -> tuple[dict[str, PolyVectorField], CheckResult]:
    """l(ξ) = π♯(θ_ξ), checked to be a Lie algebra homomorphism from ``algebra``."""
    fields = {name: pi.sharp(forms[name]) for name in algebra.basis}
    result = check_lie_homomorphism(algebra, fields)
    result.name = "dressing_homomorphism"
    result.details["fields"] = {k: str(v) for k, v in fields.items()}
    return fields, result
