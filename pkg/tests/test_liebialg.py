import pytest

from poissonforge.exceptions import StructureException
from poissonforge.liebialg.bialgebra import (
    build_double,
    check_ad_invariance,
    check_cocycle,
    check_duality_involution,
    classify_r_matrix,
    cobracket_from_r,
    dual_bracket,
    schouten_rr,
    semidirect_is_coadjoint,
)
from poissonforge.liebialg.Cobracket import Cobracket, RMatrix
from poissonforge.liebialg.LieAlgebra import LieAlgebra, check_jacobi
from poissonforge.liebialg.Tensor import Tensor, ad_tensor
from poissonforge.exactcoeff.scalars import scalar

BROKEN = {("e1", "e2"): {"e1": 1}, ("e1", "e3"): {"e2": 1}}


def test_jacobi_passes_on_known_algebras(ax_b, su2, sl2):
    for algebra in (ax_b, su2, sl2):
        assert check_jacobi(algebra).passed


def test_jacobi_failure_is_located():
    broken = LieAlgebra.from_table("broken", ["e1", "e2", "e3"], BROKEN, strict=False)
    result = check_jacobi(broken)
    assert not result.passed
    assert result.defects == [("jacobi: (e1,e2,e3)", "-e2")]


def test_strict_construction_rejects_jacobi_violation():
    with pytest.raises(StructureException):
        LieAlgebra.from_table("broken", ["e1", "e2", "e3"], BROKEN)


def test_ad_tensor_annihilates_r_on_ax_b(ax_b):
    r = Tensor.wedge(ax_b, 0, 1)
    assert ad_tensor(ax_b, 0, r).is_zero
    assert ad_tensor(ax_b, 1, Tensor.zero(ax_b, 2)).is_zero


def test_ad_tensor_of_h_on_sl2_r(sl2):
    a = Tensor.wedge(sl2, sl2.index("X"), sl2.index("Y"), "1/4")
    assert ad_tensor(sl2, sl2.index("H"), a).is_zero


def test_ad_tensor_is_a_derivation(sl2):
    t = Tensor.from_factors(sl2, [(1, ["X"]), (2, ["H"])])
    u = Tensor.from_factors(sl2, [(3, ["Y"]), ("1/2", ["X"])])
    x = sl2.index("X")
    left = ad_tensor(sl2, x, t.tensor(u))
    right = ad_tensor(sl2, x, t).tensor(u) + t.tensor(ad_tensor(sl2, x, u))
    assert left == right


def test_cobracket_of_ax_b(ax_b):
    d, invariance = cobracket_from_r(ax_b, RMatrix(Tensor.wedge(ax_b, 0, 1)))
    assert invariance.passed
    assert d.image(0).is_zero
    assert d.image(1) == Tensor.wedge(ax_b, 0, 1, -1)
    assert check_cocycle(ax_b, d).passed


def test_cobracket_of_sl2_quasitriangular(sl2):
    H, X, Y = (sl2.index(n) for n in "HXY")
    d, _ = cobracket_from_r(sl2, RMatrix(Tensor.wedge(sl2, X, Y, "1/4")))
    assert d.image(X) == Tensor.wedge(sl2, X, H, "1/4")
    assert d.image(H).is_zero
    assert check_cocycle(sl2, d).passed


def test_zero_r_gives_zero_cobracket(su2):
    d, _ = cobracket_from_r(su2, RMatrix(Tensor.zero(su2, 2)))
    assert d.is_zero


def test_non_invariant_symmetric_part_is_reported(ax_b):
    r = RMatrix(Tensor.from_factors(ax_b, [(1, ["X", "X"])]))
    _, invariance = cobracket_from_r(ax_b, r)
    assert not invariance.passed


def test_triangular_sl2_cobracket(sl2):
    H, X, Y = (sl2.index(n) for n in "HXY")
    r = RMatrix(Tensor.wedge(sl2, X, H))
    d, _ = cobracket_from_r(sl2, r)
    assert d.image(X).is_zero
    assert d.image(Y) == Tensor.wedge(sl2, X, Y, 2)
    assert d.image(H) == Tensor.wedge(sl2, X, H, 2)
    assert check_cocycle(sl2, d).passed


def test_stated_triangular_table_is_not_a_cocycle(sl2):
    stated = Cobracket.from_wedges(sl2, {"Y": [(2, "Y", "X")], "H": [(1, "X", "H")]})
    assert not check_cocycle(sl2, stated).passed


def test_plane_cobracket_is_a_cocycle(plane):
    d = Cobracket.from_wedges(plane, {"eta": [(1, "xi", "eta")]})
    assert check_cocycle(plane, d).passed


def test_dual_brackets(ax_b, sl2, su2):
    d, _ = cobracket_from_r(ax_b, RMatrix(Tensor.wedge(ax_b, 0, 1)))
    dual, result = dual_bracket(d)
    assert result.passed
    assert dual.basis == ("X*", "Y*")
    assert dual.bracket_basis(0, 1) == {1: scalar(-1)}

    H, X, Y = (sl2.index(n) for n in "HXY")
    d, _ = cobracket_from_r(sl2, RMatrix(Tensor.wedge(sl2, X, Y, "1/4")))
    dual, _ = dual_bracket(d)
    assert dual.bracket_basis(H, X) == {X: scalar("-1/4")}
    assert dual.bracket_basis(X, Y) == {}

    e2, e3 = su2.index("e2"), su2.index("e3")
    d, _ = cobracket_from_r(su2, RMatrix(Tensor.wedge(su2, e2, e3, 2)))
    dual, _ = dual_bracket(d)
    assert dual.bracket_basis(0, 1) == {1: scalar(-2)}
    assert dual.bracket_basis(1, 2) == {}


def test_dual_of_non_coalgebra_is_reported():
    abelian = LieAlgebra.abelian("a3", ["e1", "e2", "e3"])
    d = Cobracket.from_wedges(
        abelian, {"e1": [(1, "e1", "e2")], "e2": [(1, "e1", "e3")]}
    )
    _, result = dual_bracket(d)
    assert not result.passed
    assert result.details["message"] == "δ does not define a Lie coalgebra"


def test_classical_yang_baxter(ax_b, sl2):
    assert schouten_rr(RMatrix(Tensor.wedge(ax_b, 0, 1))).is_zero
    r = RMatrix.from_factors(sl2, [("1/8", ["H", "H"]), ("1/2", ["X", "Y"])])
    assert schouten_rr(r).is_zero
    assert schouten_rr(RMatrix(Tensor.zero(sl2, 2))).is_zero


def test_quasitriangular_r_is_not_a_cybe_solution(sl2):
    a = RMatrix(Tensor.wedge(sl2, sl2.index("X"), sl2.index("Y"), "1/4"))
    rr = schouten_rr(a)
    assert not rr.is_zero
    assert check_ad_invariance(sl2, rr).passed


def test_ad_invariance(sl2, ax_b):
    casimir = Tensor.from_factors(
        sl2, [("1/8", ["H", "H"]), ("1/4", ["X", "Y"]), ("1/4", ["Y", "X"])]
    )
    assert check_ad_invariance(sl2, casimir).passed
    assert not check_ad_invariance(ax_b, Tensor.from_factors(ax_b, [(1, ["X", "X"])])).passed
    abelian = LieAlgebra.abelian("a2", ["u", "v"])
    assert check_ad_invariance(abelian, Tensor.from_factors(abelian, [(5, ["u", "v"])])).passed


def test_classification(sl2, ax_b):
    r = RMatrix.from_factors(sl2, [("1/8", ["H", "H"]), ("1/2", ["X", "Y"])])
    kinds = classify_r_matrix(sl2, r)
    assert kinds["factorisable"] and kinds["quasi_triangular"] and not kinds["triangular"]
    kinds = classify_r_matrix(ax_b, RMatrix(Tensor.wedge(ax_b, 0, 1)))
    assert kinds["triangular"]


def test_doubles(ax_b, su2):
    d, _ = cobracket_from_r(ax_b, RMatrix(Tensor.wedge(ax_b, 0, 1)))
    double, result = build_double(ax_b, d)
    assert double.dim == 4
    assert result.passed

    d, _ = cobracket_from_r(su2, RMatrix(Tensor.wedge(su2, 1, 2, 2)))
    double, result = build_double(su2, d)
    assert double.dim == 6
    assert result.passed


def test_double_with_zero_cobracket_is_semidirect(sl2):
    double, result = build_double(sl2, Cobracket.zero(sl2))
    assert result.passed
    assert semidirect_is_coadjoint(sl2, double)


def test_double_of_non_bialgebra_fails_jacobi(sl2):
    H, X, Y = (sl2.index(n) for n in "HXY")
    stated = Cobracket.from_wedges(sl2, {"Y": [(2, "Y", "X")], "H": [(1, "X", "H")]})
    _, result = build_double(sl2, stated)
    assert not result.passed


def test_duality_involution(ax_b, su2):
    d, _ = cobracket_from_r(ax_b, RMatrix(Tensor.wedge(ax_b, 0, 1)))
    assert check_duality_involution(ax_b, d).passed
    d, _ = cobracket_from_r(su2, RMatrix(Tensor.wedge(su2, 1, 2, 2)))
    assert check_duality_involution(su2, d).passed
