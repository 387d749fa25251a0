"""Bialgebra operations: coboundaries, cocycle and co-Jacobi checks, duals, doubles."""

import logging
from itertools import combinations, product
from typing import Optional

from sympy.polys.domains import QQ_I

from poissonforge.exactcoeff.linalg import rank
from poissonforge.exactcoeff.scalars import Scalar
from poissonforge.liebialg.Cobracket import Cobracket, RMatrix
from poissonforge.liebialg.LieAlgebra import Constants, LieAlgebra, add_into
from poissonforge.liebialg.Tensor import Index, Tensor, ad_tensor
from poissonforge.report import CheckResult

logger = logging.getLogger(__name__)


def check_ad_invariance(algebra: LieAlgebra, t: Tensor) -> CheckResult:
    defects = []
    for x in range(algebra.dim):
        moved = ad_tensor(algebra, x, t)
        if not moved.is_zero:
            defects.append((f"ad_{algebra.basis[x]}", moved.format()))
    return CheckResult.from_defects("ad_invariance", defects)


def cobracket_from_r(algebra: LieAlgebra, r: RMatrix) -> tuple[Cobracket, CheckResult]:
    """δ(x) = ad_x(r); the symmetric part of r must be ad-invariant and drops out."""
    invariance = check_ad_invariance(algebra, r.symmetric)
    invariance.name = "symmetric_part_invariant"
    images = {x: ad_tensor(algebra, x, r.antisymmetric) for x in range(algebra.dim)}
    return Cobracket(algebra, images, strict=False), invariance


def check_cocycle(algebra: LieAlgebra, d: Cobracket) -> CheckResult:
    """ad_ξ δ(η) − ad_η δ(ξ) − δ([ξ,η]) = 0 on basis pairs."""
    defects = []
    for i, j in combinations(range(algebra.dim), 2):
        defect = (
            ad_tensor(algebra, i, d.image(j))
            - ad_tensor(algebra, j, d.image(i))
            - d.apply(algebra.bracket_basis(i, j))
        )
        if not defect.is_zero:
            defects.append((f"({algebra.basis[i]},{algebra.basis[j]})", defect.format()))
    return CheckResult.from_defects("cocycle", defects)


def dual_basis_names(algebra: LieAlgebra) -> tuple[str, ...]:
    return tuple(f"{name}*" for name in algebra.basis)


def dual_bracket(d: Cobracket) -> tuple[LieAlgebra, CheckResult]:
    """[e^j, e^k]_* = Σ_i d[i][j][k] e^i on the dual basis."""
    algebra = d.algebra
    constants: Constants = {}
    for i, t in d.images.items():
        for (j, k), c in t.components.items():
            constants.setdefault((j, k), {})[i] = c
    dual = LieAlgebra(f"{algebra.name}*", dual_basis_names(algebra), constants, strict=False)
    result = CheckResult.combine("co_jacobi", [dual.check_antisymmetry(), dual.check_jacobi()])
    if not result:
        result.details["message"] = "δ does not define a Lie coalgebra"
    return dual, result


def check_co_jacobi(d: Cobracket) -> CheckResult:
    return dual_bracket(d)[1]


def dual_cobracket(algebra: LieAlgebra, dual: LieAlgebra) -> Cobracket:
    """The cobracket on g* transposed from the bracket of g: δ*(e^k) = Σ c[i][j][k] e^i⊗e^j."""
    images: dict[int, dict[Index, Scalar]] = {}
    for (i, j), vec in algebra.constants.items():
        for k, c in vec.items():
            images.setdefault(k, {})[(i, j)] = c
    return Cobracket(dual, {k: Tensor(dual, 2, comps) for k, comps in images.items()}, strict=False)


def check_duality_involution(algebra: LieAlgebra, d: Cobracket) -> CheckResult:
    """Dualizing (g*, δ*) returns the bracket of g."""
    dual, _ = dual_bracket(d)
    double_dual, _ = dual_bracket(dual_cobracket(algebra, dual))
    defects = []
    if not double_dual.same_constants(algebra):
        defects.append(("g**", str(double_dual.table())))
    return CheckResult.from_defects("duality_involution", defects)


def schouten_rr(r: RMatrix) -> Tensor:
    """⟨r,r⟩ = [r12,r13] + [r12,r23] + [r13,r23] in g⊗g⊗g."""
    algebra = r.algebra
    components: dict[Index, Scalar] = {}

    def add(idx: Index, c: Scalar):
        components[idx] = components.get(idx, QQ_I.zero) + c

    terms = list(r.tensor.components.items())
    for (a, b), x in terms:
        for (c, d), y in terms:
            w = x * y
            for k, s in algebra.bracket_basis(a, c).items():
                add((k, b, d), w * s)
            for k, s in algebra.bracket_basis(b, c).items():
                add((a, k, d), w * s)
            for k, s in algebra.bracket_basis(b, d).items():
                add((a, c, k), w * s)
    return Tensor(algebra, 3, components)


def classify_r_matrix(algebra: LieAlgebra, r: RMatrix) -> dict[str, bool]:
    cybe = schouten_rr(r).is_zero
    symmetric_invariant = check_ad_invariance(algebra, r.symmetric).passed
    rows = [
        [r.symmetric.components.get((i, j), QQ_I.zero) for j in range(algebra.dim)]
        for i in range(algebra.dim)
    ]
    nondegenerate = rank(rows, algebra.dim) == algebra.dim
    return {
        "coboundary": symmetric_invariant
        and check_ad_invariance(algebra, schouten_rr(RMatrix(r.antisymmetric))).passed,
        "quasi_triangular": cybe and symmetric_invariant,
        "triangular": cybe and r.symmetric.is_zero,
        "factorisable": cybe and symmetric_invariant and nondegenerate,
    }


def double_constants(algebra: LieAlgebra, d: Cobracket) -> Constants:
    """Brackets of g ⊕ g*: basis e_0..e_{n-1}, then e^0..e^{n-1} at offset n.

    [e_i, e^j] = ad*_{e_i} e^j − ad*_{e^j} e_i = −Σ_k c[i][k][j] e^k + Σ_k d[i][j][k] e_k.
    """
    n = algebra.dim
    dual, _ = dual_bracket(d)
    constants: Constants = {}
    for (i, j), vec in algebra.constants.items():
        constants[(i, j)] = dict(vec)
    for (j, k), vec in dual.constants.items():
        constants[(n + j, n + k)] = {n + i: c for i, c in vec.items()}
    for i, j in product(range(n), repeat=2):
        mixed: dict[int, Scalar] = {}
        for k in range(n):
            c = algebra.structure(i, k, j)
            if c:
                mixed[n + k] = -c
        add_into(mixed, {k: c for (jj, k), c in d.image(i).components.items() if jj == j})
        if mixed:
            constants[(i, n + j)] = mixed
            constants[(n + j, i)] = {k: -c for k, c in mixed.items()}
    return constants


def pairing(n: int, a: int, b: int) -> Scalar:
    if a < n <= b and b - n == a:
        return QQ_I.one
    if b < n <= a and a - n == b:
        return QQ_I.one
    return QQ_I.zero


def build_double(algebra: LieAlgebra, d: Cobracket) -> tuple[LieAlgebra, CheckResult]:
    n = algebra.dim
    basis = algebra.basis + dual_basis_names(algebra)
    double = LieAlgebra(f"D({algebra.name})", basis, double_constants(algebra, d), strict=False)
    jacobi = CheckResult.combine(
        "double_jacobi", [double.check_antisymmetry(), double.check_jacobi()]
    )
    invariance_defects = []
    for a, b, c in product(range(2 * n), repeat=3):
        left = sum(
            (v * pairing(n, k, c) for k, v in double.bracket_basis(a, b).items()), QQ_I.zero
        )
        right = sum(
            (v * pairing(n, a, k) for k, v in double.bracket_basis(b, c).items()), QQ_I.zero
        )
        if left != right:
            invariance_defects.append(
                (f"<[{basis[a]},{basis[b]}],{basis[c]}>", left - right)
            )
    invariance = CheckResult.from_defects("pairing_invariant", invariance_defects)
    restriction_defects = []
    dual, _ = dual_bracket(d)
    for i, j in product(range(n), repeat=2):
        if double.bracket_basis(i, j) != algebra.bracket_basis(i, j):
            restriction_defects.append((f"[{basis[i]},{basis[j]}]", "g bracket changed"))
        if double.bracket_basis(n + i, n + j) != {
            n + k: c for k, c in dual.bracket_basis(i, j).items()
        }:
            restriction_defects.append((f"[{basis[n + i]},{basis[n + j]}]", "g* bracket changed"))
    restriction = CheckResult.from_defects("restricts_to_factors", restriction_defects)
    return double, CheckResult.combine("build_double", [jacobi, invariance, restriction])


def semidirect_is_coadjoint(algebra: LieAlgebra, double: LieAlgebra) -> bool:
    """With δ = 0 the mixed brackets are the coadjoint action alone."""
    n = algebra.dim
    for i, j in product(range(n), repeat=2):
        mixed = double.bracket_basis(i, n + j)
        if any(k < n for k in mixed):
            return False
    return True


def bialgebra_summary(
    algebra: LieAlgebra, d: Cobracket, r: Optional[RMatrix] = None
) -> dict[str, object]:
    dual, _ = dual_bracket(d)
    summary: dict[str, object] = {"cobracket": d.table(), "dual_bracket": dual.table()}
    if r is not None:
        summary["classification"] = classify_r_matrix(algebra, r)
    return summary
