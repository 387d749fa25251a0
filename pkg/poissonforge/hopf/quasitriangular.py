"""Universal R-matrices: coproduct axioms, quantum Yang-Baxter, quasi-cocommutativity."""

import logging

from poissonforge.exceptions import InputException, ValuationException
from poissonforge.hopf.HopfStructure import HopfStructure
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra, apply_legs, flip, place
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)


def r_inverse(R: NCPoly) -> NCPoly:
    """Σ_k (1 − R)^k, defined when R ≡ 1⊗1 modulo ħ."""
    one = R.algebra.one
    nilpotent = one - R
    if nilpotent.valuation < 1:
        raise ValuationException("R is not unipotent modulo hbar", index=nilpotent.valuation)
    total, power = one, one
    for _ in range(1, R.order):
        power = power * nilpotent
        if power.is_zero:
            break
        total = total + power
    return total


def check_quasitriangular(H: HopfStructure, R: NCPoly) -> CheckResult:
    """(Δ⊗id)R = R13 R23, (id⊗Δ)R = R13 R12 and R12 R13 R23 = R23 R13 R12."""
    if R.algebra != TensorAlgebra(H.algebra, 2):
        raise InputException("R must lie in the tensor square of the Hopf algebra")
    R12, R13, R23 = (place(R, legs, 3) for legs in ((0, 1), (0, 2), (1, 2)))
    inverse = r_inverse(R)
    invertible = CheckResult.from_defects(
        "invertible", [] if R * inverse == R.algebra.one else [("R·R⁻¹", R * inverse)]
    )
    left = apply_legs(R, [H.coproduct, None]) - R13 * R23
    right = apply_legs(R, [None, H.coproduct]) - R13 * R12
    qybe = R12 * R13 * R23 - R23 * R13 * R12
    return CheckResult.combine(
        "quasitriangular",
        [
            invertible,
            CheckResult.from_defects("coproduct_left", [] if left.is_zero else [("(Δ⊗id)R − R13R23", left)]),
            CheckResult.from_defects("coproduct_right", [] if right.is_zero else [("(id⊗Δ)R − R13R12", right)]),
            CheckResult.from_defects("qybe", [] if qybe.is_zero else [("R12R13R23 − R23R13R12", qybe)]),
        ],
    )


def check_quasi_cocommutative(H: HopfStructure, R: NCPoly) -> CheckResult:
    """τΔ(x) R = R Δ(x) on generators."""
    defects = []
    for g in H.algebra.letters:
        image = H.coproduct((g,))
        defect = flip(image) * R - R * image
        if not defect.is_zero:
            defects.append((g, defect))
    return CheckResult.from_defects("quasi_cocommutative", defects)


def counit_of_r(H: HopfStructure, R: NCPoly) -> CheckResult:
    """(ε⊗id)R = 1 = (id⊗ε)R."""
    one = TensorAlgebra(H.algebra, 1).one
    defects = []
    for side, maps in (("left", [H.counit, None]), ("right", [None, H.counit])):
        value = apply_legs(R, maps)
        if value != one:
            defects.append((side, value - one))
    return CheckResult.from_defects("counit_of_r", defects)
