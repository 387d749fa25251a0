"""Hopf algebra axioms checked on normal monomials up to a degree bound."""

import logging
from typing import Optional

from sympy.polys.domains import QQ_I

from poissonforge.exceptions import StructureException, ValuationException
from poissonforge.hopf.HopfStructure import HopfStructure
from poissonforge.liebialg.bialgebra import check_cocycle
from poissonforge.liebialg.Cobracket import Cobracket
from poissonforge.liebialg.LieAlgebra import LieAlgebra
from poissonforge.liebialg.Tensor import Tensor
from poissonforge.ncalg.AlgebraMap import check_map
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.semiclassical import classical_lie_algebra
from poissonforge.ncalg.TensorAlgebra import apply_legs, as_tensor, flip, multiply_legs
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)


def check_coassociativity(H: HopfStructure, degree: int) -> CheckResult:
    """(Δ⊗id)Δ = (id⊗Δ)Δ."""
    defects = []
    for word in H.algebra.normal_monomials(degree):
        image = H.coproduct(word)
        left = apply_legs(image, [H.coproduct, None])
        right = apply_legs(image, [None, H.coproduct])
        if left != right:
            defects.append((H.algebra.format_key(word), left - right))
    return CheckResult.from_defects("coassociativity", defects, degree=degree)


def check_counit(H: HopfStructure, degree: int) -> CheckResult:
    """(ε⊗id)Δ = id = (id⊗ε)Δ."""
    defects = []
    for word in H.algebra.normal_monomials(degree):
        image = H.coproduct(word)
        expected = as_tensor(H.algebra.word(*word))
        for side, maps in (("left", [H.counit, None]), ("right", [None, H.counit])):
            value = apply_legs(image, maps)
            if value != expected:
                defects.append((f"{side} {H.algebra.format_key(word)}", value - expected))
    return CheckResult.from_defects("counit", defects, degree=degree)


def check_antipode(H: HopfStructure, degree: int) -> CheckResult:
    """m(S⊗id)Δ = ε = m(id⊗S)Δ."""
    defects = []
    for word in H.algebra.normal_monomials(degree):
        image = H.coproduct(word)
        expected = H.epsilon(H.algebra.word(*word))
        for side, maps in (("left", [H.antipode, None]), ("right", [None, H.antipode])):
            value = multiply_legs(apply_legs(image, maps))
            if value != expected:
                defects.append((f"{side} {H.algebra.format_key(word)}", value - expected))
    return CheckResult.from_defects("antipode", defects, degree=degree)


def check_delta_hom(H: HopfStructure, degree: int) -> CheckResult:
    """Δ respects every relation, and Δ(uv) = Δ(u)Δ(v) for normal monomials with deg u + deg v ≤ d."""
    relations = check_map(H.coproduct)
    defects = []
    monomials = H.algebra.normal_monomials(degree)
    for u in monomials:
        for v in monomials:
            if not u or not v or len(u) + len(v) > degree:
                continue
            product = H.algebra.word(*u) * H.algebra.word(*v)
            lhs = H.coproduct.apply(product)
            rhs = H.coproduct(u) * H.coproduct(v)
            if lhs != rhs:
                defects.append((f"{H.algebra.format_key(u)}·{H.algebra.format_key(v)}", lhs - rhs))
    return CheckResult.combine(
        "delta_homomorphism", [relations, CheckResult.from_defects("products", defects)]
    )


def semiclassical_cobracket(
    H: HopfStructure, algebra: Optional[LieAlgebra] = None
) -> tuple[Cobracket, CheckResult]:
    """δ(x) = ((Δx − τΔx)/ħ) mod ħ on generators, checked to be a 1-cocycle."""
    algebra = algebra or classical_lie_algebra(H.algebra)
    images = {}
    for i, name in enumerate(algebra.basis):
        image = H.coproduct.apply(H.algebra.gen(name))
        difference = image - flip(image)
        if difference.valuation < 1:
            raise ValuationException(
                f"Δ({name}) − τΔ({name}) is not divisible by hbar", index=difference.valuation
            )
        components = {}
        for (left, right), c in difference.divide_by_hbar(1).terms.items():
            value = c.coeff(0)
            if not value:
                continue
            if len(left) != 1 or len(right) != 1:
                raise StructureException(
                    f"semiclassical cobracket of {name} leaves g⊗g", defect=f"{left}⊗{right}"
                )
            key = (algebra.index(left[0]), algebra.index(right[0]))
            components[key] = components.get(key, QQ_I.zero) + value
        images[i] = Tensor(algebra, 2, components)
    d = Cobracket(algebra, images, strict=False)
    result = CheckResult.combine(
        "semiclassical_cobracket",
        [d.check_coantisymmetry(), check_cocycle(algebra, d)],
        table=d.table(),
    )
    return d, result


def _classical_terms(p: NCPoly) -> dict:
    return {k: c.coeff(0) for k, c in p.terms.items() if c.coeff(0)}


def check_quantization(
    H: HopfStructure, classical: HopfStructure, algebra: Optional[LieAlgebra] = None
) -> CheckResult:
    """m_ħ ≡ m and Δ_ħ ≡ Δ modulo ħ, and the semiclassical cobracket is a cocycle."""
    if H.algebra.letters != classical.algebra.letters:
        raise StructureException(f"{H.name} and {classical.name} have different generators")
    products = []
    for lhs in classical.algebra.all_rules:
        if lhs not in H.algebra.all_rules:
            products.append((H.algebra.format_key(lhs), "rule missing"))
            continue
        quantum = _classical_terms(H.algebra.rule_value(lhs))
        plain = _classical_terms(classical.algebra.rule_value(lhs))
        if quantum != plain:
            products.append((H.algebra.format_key(lhs), H.algebra.rule_value(lhs).mod_hbar()))
    coproducts = []
    for g in classical.algebra.letters:
        if _classical_terms(H.coproduct((g,))) != _classical_terms(classical.coproduct((g,))):
            coproducts.append((g, H.coproduct((g,)).mod_hbar()))
    _, co_poisson = semiclassical_cobracket(H, algebra)
    co_poisson.name = "co_poisson"
    return CheckResult.combine(
        "quantization",
        [
            CheckResult.from_defects("product_mod_hbar", products),
            CheckResult.from_defects("coproduct_mod_hbar", coproducts),
            co_poisson,
        ],
    )
