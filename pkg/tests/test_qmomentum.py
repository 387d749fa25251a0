import pytest

from poissonforge.exceptions import InputException, ValuationException
from poissonforge.hopf.HopfStructure import HopfStructure
from poissonforge.ncalg.AlgebraMap import AlgebraMap
from poissonforge.ncalg.Presentation import Presentation
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra
from poissonforge.qmomentum.ActionExpr import (
    CommutatorWith,
    Compose,
    HbarDivide,
    Identity,
    LeftMult,
    RightMult,
    parse_action,
)
from poissonforge.qmomentum.checks import (
    check_action_lie_hom,
    check_module_algebra,
    check_momentum_map,
    check_relation,
    check_semiclassical_limit,
    solve_relation,
)
from poissonforge.qmomentum.cobar import check_coboundary_squares_to_zero
from poissonforge.qmomentum.ideal import (
    QuantumIdeal,
    check_ideal_invariance,
    check_quantum_reduction,
    invariant_subalgebra,
)
from poissonforge.qmomentum.NCOneForm import NCOneForm, check_raw_homomorphism
from poissonforge.qmomentum.QuantumAction import QuantumAction, RelationClaim

ORDER = 3


def two_dim_group():
    return Presentation("g2", ("xi", "eta"), {}, commute_by_default=False, order=ORDER)


def two_dim_coproduct(group, deformed=True):
    T = TensorAlgebra(group, 2)
    one, xi, eta = group.one, group.gen("xi"), group.gen("eta")
    correction = T.tensor(eta, xi).scale("-hbar") if deformed else T.zero
    return AlgebraMap(
        "g2.coproduct",
        group,
        T,
        {
            "xi": T.tensor(xi, one) + correction + T.tensor(one, xi),
            "eta": T.tensor(eta, one) - T.tensor(eta, eta).scale("hbar") + T.tensor(one, eta),
        },
    )


def two_dim_action(target, deformed=True, relations=()):
    group = two_dim_group()
    a, b, ainv = target.gen("a"), target.gen("b"), target.gen("ainv")
    momentum = {"xi": NCOneForm.pair(a, b), "eta": NCOneForm.pair(a, ainv)}
    return QuantumAction(
        "case",
        group,
        target,
        {g: form.sharp() for g, form in momentum.items()},
        coproduct=two_dim_coproduct(group, deformed),
        relations=tuple(r(group) for r in relations),
        momentum=momentum,
    )


@pytest.fixture
def centred_plane():
    """[a,b] = 0 with a spectator x moving a and b."""
    return Presentation(
        "case1",
        ("a", "b", "x"),
        {
            ("x", "a"): {("a", "x"): 1, ("a", "a"): "hbar", ("a",): "-2*hbar"},
            ("x", "ainv"): {("ainv", "x"): 1, (): "-hbar", ("ainv",): "2*hbar"},
            ("x", "b"): {("b", "x"): 1, ("b",): "hbar", (): "-3*hbar"},
        },
        invertible={"a"},
        order=ORDER,
    )


@pytest.fixture
def weyl_plane():
    """ba = ab + hbar."""
    return Presentation(
        "case2",
        ("a", "b"),
        {("b", "a"): {("a", "b"): 1, (): "hbar"}, ("b", "ainv"): {("ainv", "b"): 1, ("ainv", "ainv"): "-hbar"}},
        invertible={"a"},
        order=ORDER,
    )


def test_action_expressions(quantum_plane):
    a, b = quantum_plane.gen("a"), quantum_plane.gen("b")
    conjugation = Compose((LeftMult(a), RightMult(quantum_plane.gen("ainv"))))
    assert conjugation(b) == b.scale("exp(-hbar)")
    assert Identity()(b) == b
    assert CommutatorWith(a)(a).is_zero
    parsed = parse_action({"hdiv": 1, "of": {"commutator": "b"}}, quantum_plane)
    assert parsed(a) == (b * a - a * b).divide_by_hbar(1)


def test_hbar_division_needs_valuation(quantum_plane):
    undivisible = HbarDivide(1, LeftMult(quantum_plane.gen("a")))
    with pytest.raises(ValuationException):
        undivisible(quantum_plane.gen("b"))
    with pytest.raises(InputException):
        parse_action({"shift": 1}, quantum_plane)


def test_case2_action_values(weyl_plane):
    action = two_dim_action(weyl_plane)
    a, b = weyl_plane.gen("a"), weyl_plane.gen("b")
    assert action.apply_word(("xi",), a) == a
    assert action.apply_word(("xi",), b).is_zero
    assert action.apply_word(("eta",), b) == weyl_plane.gen("ainv")
    assert action.multi_apply(("xi", "eta"), (a, b)) == weyl_plane.one


def test_case2_commutator_relation(weyl_plane):
    def claimed(g):
        return RelationClaim("claimed", g.poly("xi*eta - eta*xi"), g.poly("3*eta - hbar*eta**2"), claimed=True)

    def derived(g):
        return RelationClaim("derived", g.poly("xi*eta - eta*xi"), g.poly("-eta + hbar*eta**2"))

    action = two_dim_action(weyl_plane, relations=(claimed, derived))
    assert check_relation(action, action.relations[1], 2).passed
    assert not check_relation(action, action.relations[0], 2).passed
    assert check_action_lie_hom(action, 2).passed


def test_relation_diagnostics(weyl_plane):
    action = two_dim_action(weyl_plane)
    lhs = action.group.poly("xi*eta - eta*xi")
    found = solve_relation(action, lhs, 2)
    assert found is not None
    assert check_relation(action, RelationClaim("solved", lhs, found), 2).passed

    def wrong(g):
        return RelationClaim("wrong", g.poly("xi*eta - eta*xi"), g.poly("3*eta"))

    result = check_action_lie_hom(two_dim_action(weyl_plane, relations=(wrong,)), 2, diagnose=True)
    assert not result.passed
    assert result.details["corrected"]["wrong"] is not None


def test_momentum_forms_and_classical_limit(weyl_plane):
    action = two_dim_action(weyl_plane)
    assert check_momentum_map(action, 2).passed
    assert check_semiclassical_limit(action).passed


def test_deformed_coproduct_gives_module_algebra(centred_plane):
    assert check_module_algebra(two_dim_action(centred_plane), 2).passed


def test_primitive_coproduct_breaks_module_algebra(centred_plane):
    result = check_module_algebra(two_dim_action(centred_plane, deformed=False), 2)
    assert not result.passed
    assert any(label == "xi(x·x)" for label, _ in result.defects)


def test_module_algebra_needs_coproduct(centred_plane):
    action = two_dim_action(centred_plane)
    bare = QuantumAction("bare", action.group, centred_plane, action.generators)
    with pytest.raises(InputException):
        check_module_algebra(bare, 2)


def test_missing_generator_action(centred_plane):
    with pytest.raises(InputException):
        QuantumAction("partial", two_dim_group(), centred_plane, {"xi": Identity()})


def test_quotient_invariants(centred_plane):
    action = two_dim_action(centred_plane)
    ideal = QuantumIdeal.from_rules(
        centred_plane, {("a",): {(): 2}, ("ainv",): {(): "1/2"}, ("b",): {(): 3}}, "level"
    )
    assert len(ideal.generators) == 3
    assert check_ideal_invariance(action, ideal, 2).passed
    basis, closure = invariant_subalgebra(action, 2, ideal)
    assert len(basis) == 3
    assert closure.passed
    assert check_quantum_reduction(action, ideal, 2).passed


def test_trivial_action_fixes_everything(quantum_plane):
    group = Presentation("trivial", ("g",), {}, commute_by_default=False, order=quantum_plane.order)
    action = QuantumAction(
        "trivial", group, quantum_plane, {"g": Identity()}, counit={"g": group.one.coefficient(())}
    )
    basis, closure = invariant_subalgebra(action, 2)
    assert len(basis) == len(quantum_plane.normal_monomials(2))
    assert closure.passed


def test_oneform_product_is_multiplicative(weyl_plane, quantum_plane):
    for algebra in (weyl_plane, quantum_plane):
        a, b, ainv = algebra.gen("a"), algebra.gen("b"), algebra.gen("ainv")
        u, v = NCOneForm.pair(a, b), NCOneForm.pair(b, ainv) + NCOneForm.d(a)
        assert check_raw_homomorphism(u, v, algebra.normal_monomials(2)).passed


def test_trivial_oneforms():
    commutative = Presentation("comm", ("a", "b"), {}, order=ORDER)
    a = commutative.gen("a")
    da = NCOneForm.d(a)
    for word in commutative.normal_monomials(2):
        f = commutative.word(*word)
        assert NCOneForm.d(commutative.one).raw()(f).is_zero
        assert (da * da).raw()(f).is_zero


def test_coboundary_squares_to_zero(usl2):
    assert check_coboundary_squares_to_zero(HopfStructure.primitive(usl2).coproduct, 2).passed
    assert check_coboundary_squares_to_zero(two_dim_coproduct(two_dim_group()), 3).passed


def test_coboundary_detects_non_coassociativity():
    group = Presentation("g1", ("xi",), {}, commute_by_default=False, order=ORDER)
    T = TensorAlgebra(group, 2)
    xi = group.gen("xi")
    skewed = AlgebraMap("skewed", group, T, {"xi": T.tensor(xi, group.one) + T.tensor(xi, xi).scale("hbar")})
    assert not check_coboundary_squares_to_zero(skewed, 1).passed
