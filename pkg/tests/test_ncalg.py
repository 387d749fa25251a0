import pytest

from poissonforge.exactcoeff.HSeries import HSeries
from poissonforge.exceptions import InputException, NonTerminationException, StructureException
from poissonforge.ncalg.AlgebraMap import AlgebraMap, check_map
from poissonforge.ncalg.Presentation import Presentation
from poissonforge.ncalg.semiclassical import (
    abelianize,
    classical_chart,
    classical_lie_algebra,
    commutator,
    semiclassical_bracket,
)
from poissonforge.ncalg.TensorAlgebra import (
    TensorAlgebra,
    flip,
    multiply_legs,
    place,
    tensor_product,
)


def test_pbw_rules(usl2):
    E, F, H = usl2.gen("E"), usl2.gen("F"), usl2.gen("H")
    assert E * F == usl2.poly("F*E + H")
    assert commutator(H, E) == E.scale(2)
    assert commutator(H, F) == F.scale(-2)
    assert str(E * F) == "H + F*E"


def test_enveloping_algebra_is_confluent(usl2):
    assert usl2.check_confluence(3).passed
    assert len(usl2.normal_monomials(3)) == 20


def test_classical_lie_algebra(usl2, sl2_fhe):
    assert classical_lie_algebra(usl2).same_constants(sl2_fhe)


def test_map_must_respect_relations(usl2):
    gens = {g: usl2.gen(g) for g in usl2.generators}
    identity = AlgebraMap("id", usl2, usl2, gens)
    assert check_map(identity).passed
    doubled = AlgebraMap("double", usl2, usl2, {**gens, "H": gens["H"].scale(2)})
    result = check_map(doubled)
    assert not result.passed
    labels = {label for label, _ in result.defects}
    assert {"E*F", "H*F", "E*H"} == labels


def test_map_needs_every_letter(usl2):
    with pytest.raises(InputException):
        AlgebraMap("partial", usl2, usl2, {"E": usl2.gen("E")})


def test_quantum_plane(quantum_plane):
    P = quantum_plane
    assert P.word("b", "a") == P.poly("a*b").scale("exp(hbar)")
    assert P.word("b", "ainv") == P.poly("ainv*b").scale("exp(-hbar)")
    assert P.poly("a**-1*a") == P.one
    assert P.check_confluence(3).passed
    assert semiclassical_bracket(P.gen("a"), P.gen("b")) == classical_chart(P).poly("-a*b")


def test_classical_limit_commutes(quantum_plane):
    limit = quantum_plane.mod_hbar()
    assert limit.word("b", "a") == limit.word("a", "b")
    assert abelianize(quantum_plane.word("ainv", "b")) == classical_chart(quantum_plane).poly("b/a")


def test_rules_must_decrease():
    with pytest.raises(StructureException):
        Presentation("bad", ("x", "y"), {("x", "y"): {("y", "x"): 1}})


def test_hbar_weighted_rules_reach_a_truncated_normal_form():
    graded = Presentation(
        "graded", ("x", "y"), {("y", "x"): {("x", "y"): 1, ("y", "y", "x"): "hbar"}}, order=3
    )
    assert graded.word("y", "x") == graded.poly("x*y + hbar*x*y**2 + 2*hbar**2*x*y**3")


def test_hbar_weighted_growth_vanishes_to_the_order():
    # x = hbar*x*x, so x is divisible by every power of hbar
    growing = Presentation("grow", ("x",), {("x",): {("x", "x"): "hbar"}}, order=4)
    assert growing.gen("x").is_zero
    assert growing.gen("x").order == 4


def test_rewriting_depth_is_bounded():
    tight = Presentation("tight", ("x", "y"), {}, max_depth=2)
    with pytest.raises(NonTerminationException):
        tight.word("y", "y", "x", "x")


def test_elements_remember_their_precision(quantum_plane):
    P = quantum_plane
    b = P.gen("b")
    lowered = b.scale("hbar").divide_by_hbar()
    assert lowered.order == 3
    assert lowered == b
    assert lowered != b + P.poly("hbar**2*a")
    assert lowered == b + P.poly("hbar**3*a")
    assert lowered.truncate(1) == b + P.poly("hbar*a")
    assert lowered.times_hbar() == b.scale("hbar")
    unknown = P.zero.truncate(2)
    assert unknown.order == 2
    assert unknown == P.poly("hbar**2*a")
    assert unknown != P.poly("hbar*a")


def test_series_in_a_generator(usl2):
    q = usl2.poly({"series_in": "H", "expr": "exp(hbar*x/4)"})
    assert q.coefficient(()) == HSeries.one(3)
    assert q.coefficient(("H",)) == HSeries.from_expr("hbar/4", 3)
    assert q.coefficient(("H", "H")) == HSeries.from_expr("hbar**2/32", 3)


def test_unknown_letters_are_input_errors(usl2):
    with pytest.raises(InputException):
        usl2.poly("E*Z")
    with pytest.raises(InputException):
        usl2.poly("E**-1")


def test_tensor_products(usl2):
    E, F = usl2.gen("E"), usl2.gen("F")
    T = TensorAlgebra(usl2, 2)
    e1, f2 = T.tensor(E, usl2.one), T.tensor(usl2.one, F)
    assert e1 * f2 == T.tensor(E, F)
    assert e1 * T.tensor(F, usl2.one) == T.tensor(usl2.poly("F*E + H"), usl2.one)
    assert flip(T.tensor(E, F)) == T.tensor(F, E)
    assert multiply_legs(T.tensor(E, F)) == E * F
    assert tensor_product(E, F) == T.tensor(E, F)
    r13 = place(T.tensor(E, F), (0, 2), 3)
    assert r13 == TensorAlgebra(usl2, 3).tensor(E, usl2.one, F)
