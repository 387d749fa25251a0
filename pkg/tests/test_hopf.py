import pytest

from poissonforge.exceptions import StructureException
from poissonforge.hopf.axioms import (
    check_antipode,
    check_coassociativity,
    check_counit,
    check_delta_hom,
    check_quantization,
    semiclassical_cobracket,
)
from poissonforge.hopf.HopfStructure import HopfStructure
from poissonforge.hopf.quasitriangular import (
    check_quasi_cocommutative,
    check_quasitriangular,
    counit_of_r,
    r_inverse,
)
from poissonforge.liebialg.Cobracket import Cobracket
from poissonforge.ncalg.semiclassical import classical_lie_algebra, enveloping_algebra
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra
from tests.helpers import QUANTUM_H, build_uh_sl2


def test_primitive_structure_is_hopf(usl2):
    H = HopfStructure.primitive(usl2)
    assert H.check_maps().passed
    for check in (check_coassociativity, check_counit, check_antipode, check_delta_hom):
        assert check(H, 2).passed
    d, result = semiclassical_cobracket(H)
    assert d.is_zero and result.passed


def test_uh_sl2_axioms(uh_sl2):
    assert uh_sl2.check_maps().passed
    for check in (check_coassociativity, check_counit, check_antipode, check_delta_hom):
        assert check(uh_sl2, 2).passed, check.__name__


def test_uh_sl2_commutator_is_quantum_integer(uh_sl2):
    U = uh_sl2.algebra
    E, F = U.gen("E"), U.gen("F")
    assert E * F - F * E == U.poly(QUANTUM_H)
    assert U.check_confluence(3).passed


def test_uh_sl2_semiclassical_cobracket(uh_sl2):
    d, result = semiclassical_cobracket(uh_sl2)
    assert result.passed
    expected = Cobracket.from_wedges(
        d.algebra, {"E": [("1/4", "E", "H")], "F": [("1/4", "F", "H")]}
    )
    assert d.same_as(expected)


def test_uh_sl2_quantizes_the_enveloping_algebra(uh_sl2, sl2_fhe):
    classical = HopfStructure.primitive(enveloping_algebra(sl2_fhe, order=3))
    assert check_quantization(uh_sl2, classical).passed


def test_missing_q_factor_breaks_delta_hom():
    perturbed = build_uh_sl2(coproduct_e=lambda T, U: T.tensor(U.gen("E"), U.one) + T.tensor(U.one, U.gen("E")))
    assert not check_delta_hom(perturbed, 2).passed


def test_literal_antipode_fails():
    literal = build_uh_sl2(
        antipode=lambda U: {
            "E": -(U.gen("E").scale("exp(hbar/4)")),
            "F": -(U.gen("F").scale("exp(-hbar/4)")),
            "H": -U.gen("H"),
        }
    )
    assert not check_antipode(literal, 1).passed


def test_counit_and_antipode_failures(usl2):
    gens = {g: usl2.gen(g) for g in usl2.generators}
    good = HopfStructure.primitive(usl2)
    coproduct = {g: good.coproduct((g,)) for g in usl2.generators}
    bad_counit = HopfStructure.from_images(
        "bad", usl2, coproduct, {"E": 0, "F": 0, "H": 1}, {g: -x for g, x in gens.items()}
    )
    assert not check_counit(bad_counit, 1).passed
    bad_antipode = HopfStructure.from_images(
        "bad", usl2, coproduct, {"E": 0, "F": 0, "H": 0}, gens
    )
    assert not check_antipode(bad_antipode, 1).passed


def test_classical_limit_needs_linear_commutators(quantum_plane):
    with pytest.raises(StructureException):
        classical_lie_algebra(quantum_plane)


def _r_element(U, terms):
    T = TensorAlgebra(U, 2)
    r = T.zero
    for coeff, left, right in terms:
        r = r + T.tensor(U.gen(left), U.gen(right)).scale(coeff)
    return T.one + r.scale("hbar")


def test_trivial_r_matrix(usl2):
    H = HopfStructure.primitive(usl2)
    R = TensorAlgebra(usl2, 2).one
    assert check_quasitriangular(H, R).passed
    assert counit_of_r(H, R).passed
    assert check_quasi_cocommutative(H, R).passed


def test_first_order_r_matrix(sl2_fhe):
    U = enveloping_algebra(sl2_fhe, order=2)
    H = HopfStructure.primitive(U)
    R = _r_element(U, [("1/8", "H", "H"), ("1/2", "E", "F")])
    assert R * r_inverse(R) == TensorAlgebra(U, 2).one
    assert check_quasitriangular(H, R).passed
    assert counit_of_r(H, R).passed


def test_qybe_at_second_order_is_cybe(sl2_fhe):
    U = enveloping_algebra(sl2_fhe, order=3)
    H = HopfStructure.primitive(U)
    solution = check_quasitriangular(H, _r_element(U, [("1/8", "H", "H"), ("1/2", "E", "F")]))
    parts = {p.name: p.passed for p in solution.parts}
    assert parts["qybe"] and parts["invertible"]
    assert not parts["coproduct_left"]
    skew = check_quasitriangular(H, _r_element(U, [("1/4", "E", "F"), ("-1/4", "F", "E")]))
    assert not {p.name: p.passed for p in skew.parts}["qybe"]
