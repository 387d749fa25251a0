import pytest

from poissonforge.exactcoeff.CoordPoly import Chart
from poissonforge.exceptions import InputException
from poissonforge.poissongeo.brackets import hamiltonian_field
from poissonforge.poissongeo.PolyTensors import PolyBivector, PolyVectorField
from poissonforge.reduction.poisson_reduction import (
    check_action,
    check_ideal_invariant,
    check_ideal_poisson_closed,
    check_pipelines_agree,
    invariant_functions,
    reduced_bracket,
    sw_reduced_algebra,
)
from poissonforge.reduction.ReductionSetup import ReductionSetup

SEED = 20240601


def canonical(chart, *pairs):
    return PolyBivector.from_wedges(chart, {pair: 1 for pair in pairs})


def dressing_setup(spectator=False):
    chart = Chart(("a", "b", "q", "p") if spectator else ("a", "b"))
    wedges = {("a", "b"): "a*b"}
    if spectator:
        wedges[("q", "p")] = 1
    return ReductionSetup(
        "dressing",
        PolyBivector.from_wedges(chart, wedges),
        fields={
            "xi": PolyVectorField.from_map(chart, {"b": "b"}),
            "eta": PolyVectorField.from_map(chart, {"a": "-b"}),
        },
        ideal=[chart.poly("a - 1"), chart.var("b")],
        leading=["a", "b"],
    )


def test_dressing_ideal_is_closed_and_invariant():
    setup = dressing_setup()
    assert check_ideal_poisson_closed(setup).passed
    assert check_ideal_invariant(setup).passed
    basis, closure = invariant_functions(setup, 3)
    assert len(basis) == 1 and basis[0].is_constant
    assert closure.passed


def test_coordinate_ideal_of_canonical_plane_is_not_closed():
    chart = Chart(("a", "b"))
    pi = canonical(chart, ("a", "b"))
    both = ReductionSetup("both", pi, ideal=[chart.var("a"), chart.var("b")])
    assert not check_ideal_poisson_closed(both).passed
    single = ReductionSetup("single", pi, ideal=[chart.var("a")])
    assert check_ideal_poisson_closed(single).passed


def test_nonlinear_generator_membership():
    chart = Chart(("a", "b"))
    setup = ReductionSetup("square", canonical(chart, ("a", "b")), ideal=["a**2 - 1"])
    assert setup.contains(chart.poly("a**4 - 1"))
    assert setup.contains(chart.poly("b*a**2 - b"))
    assert not setup.contains(chart.poly("a - 1"))
    assert setup.reduce(chart.poly("a**3 + b")) == chart.poly("a + b")


def test_membership_needs_more_than_one_division_step():
    chart = Chart(("x", "y"))
    setup = ReductionSetup("pair", canonical(chart, ("x", "y")), ideal=["x*y - 1", "y**2 - 1"])
    # x - y = x*(1 - y**2) + y*(x*y - 1) is not visible from either leading term alone
    assert setup.contains(chart.poly("x - y"))
    assert not setup.contains(chart.poly("x + y"))


def test_membership_through_an_inverse():
    chart = Chart(("a", "b"), {"a"})
    setup = ReductionSetup("unit", canonical(chart, ("a", "b")), ideal=["a*b - 1"])
    assert setup.contains(chart.var("b") - chart.var("a").inverse_monomial())
    assert setup.reduce(chart.poly("a*b**2")) == chart.var("b")


def test_unknown_leading_variable_is_rejected():
    chart = Chart(("a", "b"))
    with pytest.raises(InputException):
        ReductionSetup("bad", canonical(chart, ("a", "b")), ideal=["a - 1"], leading=["c"])


def test_spectator_pair_survives_reduction():
    setup = dressing_setup(spectator=True)
    basis, closure = invariant_functions(setup, 2)
    assert len(basis) == 6
    assert closure.passed
    chart = setup.chart
    value, result = reduced_bracket(setup, chart.var("q"), chart.var("p"), SEED)
    assert value == chart.one
    assert result.passed
    classes, table, algebra = sw_reduced_algebra(setup, 2)
    assert len(classes) == 6
    assert algebra.passed
    assert check_pipelines_agree(setup, 2, SEED).passed


def test_localized_plane_bracket():
    chart = Chart(("a", "b"), {"a", "b"})
    setup = ReductionSetup("localized", PolyBivector.from_wedges(chart, {("a", "b"): "a*b"}))
    value, result = reduced_bracket(setup, chart.var("a"), chart.var("b"), SEED)
    assert value == chart.poly("a*b")
    assert result.passed


def test_rotation_invariants():
    chart = Chart(("q", "p"))
    setup = ReductionSetup(
        "rotation",
        canonical(chart, ("q", "p")),
        fields={"r": PolyVectorField.from_map(chart, {"p": "q", "q": "-p"})},
    )
    assert len(invariant_functions(setup, 4)[0]) == 3
    assert len(invariant_functions(setup, 2)[0]) == 2


def test_translation_quotient_is_remaining_pair():
    chart = Chart(("q1", "p1", "q2", "p2"))
    pi = canonical(chart, ("q1", "p1"), ("q2", "p2"))
    p1 = chart.var("p1")
    setup = ReductionSetup(
        "translation",
        pi,
        fields={"t": hamiltonian_field(pi, p1)},
        hamiltonians={"t": p1},
        ideal=[p1 - 2],
        leading=["p1"],
    )
    assert check_action(setup).passed
    classes, table, result = sw_reduced_algebra(setup, 2)
    assert len(classes) == 6
    assert all(c.diff("q1").is_zero and c.diff("p1").is_zero for c in classes)
    assert result.passed


def test_angular_momentum_invariants():
    names = ("q1", "q2", "q3", "p1", "p2", "p3")
    chart = Chart(names)
    pi = canonical(chart, ("q1", "p1"), ("q2", "p2"), ("q3", "p3"))
    momenta = {
        "L1": chart.poly("q2*p3 - q3*p2"),
        "L2": chart.poly("q3*p1 - q1*p3"),
        "L3": chart.poly("q1*p2 - q2*p1"),
    }
    setup = ReductionSetup(
        "angular",
        pi,
        fields={k: hamiltonian_field(pi, H) for k, H in momenta.items()},
        hamiltonians=momenta,
        ideal=[sum((L**2 for L in momenta.values()), chart.zero) - 1],
    )
    L2 = setup.ideal[0] + 1
    assert setup.contains(L2 * chart.var("q1") - chart.var("q1"))
    assert not setup.contains(L2)
    assert check_ideal_invariant(setup).passed
    assert check_ideal_poisson_closed(setup).passed
    basis, closure = invariant_functions(setup, 2)
    assert len(basis) == 4
    assert closure.passed
    classes, table, result = sw_reduced_algebra(setup, 2)
    assert len(classes) == 4
    assert result.passed
    qq = chart.poly("q1**2 + q2**2 + q3**2")
    pp = chart.poly("p1**2 + p2**2 + p3**2")
    qp = chart.poly("q1*p1 + q2*p2 + q3*p3")
    value, bracket = reduced_bracket(setup, qq, pp, SEED)
    assert value == qp * 4
    assert bracket.passed
    assert reduced_bracket(setup, pp, qp, SEED)[0] == pp * -2
