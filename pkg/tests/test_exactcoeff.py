import pytest

from poissonforge.exactcoeff.CoordPoly import Chart
from poissonforge.exactcoeff.HSeries import HSeries, divide_by_hbar, series_exp
from poissonforge.exactcoeff.linalg import kernel, series_kernel, series_solve, solve
from poissonforge.exactcoeff.scalars import (
    conjugate,
    format_scalar,
    format_terms,
    norm_squared,
    parse_scalar,
    scalar,
)
from poissonforge.exceptions import InputException, StructureException, ValuationException
from poissonforge.utils import exponent_vectors, words_up_to


def test_scalar_parsing():
    z = parse_scalar("1/2+3/4*i")
    assert format_scalar(z) == "1/2+3/4*i"
    assert conjugate(z) == parse_scalar("1/2-3/4*i")
    assert norm_squared(z) == scalar("13/16").x
    assert format_scalar(scalar(-3)) == "-3"
    assert format_scalar(parse_scalar("i/2")) == "1/2*i"
    with pytest.raises(InputException):
        parse_scalar("x + 1")
    with pytest.raises(InputException):
        parse_scalar("sqrt(2)")


def test_format_terms():
    assert format_terms([(1, "X"), (-1, "Y")]) == "X - Y"
    assert format_terms([("1/4", "X⊗H"), (0, "H⊗X")]) == "1/4*X⊗H"
    assert format_terms([("1+i", "E")]) == "(1+1*i)*E"
    assert format_terms([]) == "0"


def test_series_exp():
    quarter = HSeries.from_coefficients([0, "1/4"], 6)
    q = series_exp(quarter)
    assert q.coefficients[:4] == tuple(scalar(c) for c in ("1", "1/4", "1/32", "1/384"))
    assert series_exp(HSeries.zero()) == HSeries.one()
    h = HSeries.hbar()
    assert h.exp() * (-h).exp() == 1
    assert HSeries.from_expr("exp(hbar/4)") == q


def test_series_exp_rejects_constant_term():
    with pytest.raises(ValuationException):
        HSeries.one().exp()


def test_exp_is_additive():
    s = HSeries.from_coefficients([0, 2, "1/3"], 6)
    t = HSeries.from_coefficients([0, 0, -1, 5], 6)
    assert (s + t).exp() == s.exp() * t.exp()


def test_division_by_hbar():
    s = HSeries.from_coefficients([0, 0, 3], 6)
    shifted = divide_by_hbar(s, 1)
    assert shifted.order == 5
    assert shifted == HSeries.hbar(5) * 3
    with pytest.raises(ValuationException) as error:
        HSeries.one().divide_by_hbar()
    assert error.value.index == 0


def test_quantum_integer_at_one():
    num = HSeries.from_expr("exp(hbar/2) - exp(-hbar/2)")
    den = HSeries.from_expr("exp(hbar/4) - exp(-hbar/4)")
    ratio = num.divide_by_hbar() / den.divide_by_hbar()
    assert ratio.coeff(0) == scalar(2)
    assert ratio == HSeries.from_expr("exp(hbar/4) + exp(-hbar/4)")


def test_inverse_and_truncation():
    s = HSeries.from_coefficients([2, 1, 3], 6)
    assert s * s.inverse() == 1
    t = HSeries.from_coefficients([1, -1, 0, 7, 2], 6)
    for m in range(1, 6):
        assert (s * t).truncate(m) == s.truncate(m) * t.truncate(m)
    with pytest.raises(ValuationException):
        HSeries.hbar().inverse()


def test_equality_uses_smaller_order():
    assert HSeries.from_coefficients([1, 0, 0, 5], 6) == HSeries.from_coefficients([1], 3)
    assert HSeries.zero(4).valuation == 4


def test_poly_diff():
    chart = Chart(("a", "b"), frozenset({"a"}))
    assert chart.poly("a*b").diff("a") == chart.var("b")
    assert chart.poly("1/a").diff("a") == chart.poly("-1/a**2")
    xy = Chart(("x", "y", "a", "b"))
    assert xy.poly("x*y").diff("x") == xy.var("y")
    with pytest.raises(InputException):
        chart.var("a").diff("z")


def test_leibniz():
    chart = Chart(("a", "b", "c"), frozenset({"c"}))
    f, g = chart.poly("a**2*b + 3*c"), chart.poly("b/c - a")
    for v in chart.variables:
        assert (f * g).diff(v) == f.diff(v) * g + f * g.diff(v)


def test_laurent_exponents_need_invertible_variables():
    chart = Chart(("x", "y"))
    with pytest.raises(StructureException):
        chart.poly("1/x")
    with pytest.raises(InputException):
        chart.poly("x*z")


def test_substitution():
    chart = Chart(("a", "b", "c", "d"), frozenset({"a"}))
    det = chart.poly("a*d - b*c")
    assert det.subs({"d": chart.poly("(1 + b*c)/a")}) == chart.one
    assert chart.poly("a**2 + i*b").evaluate({"a": 2, "b": 1, "c": 0, "d": 0}) == parse_scalar("4+i")


def test_monomials():
    chart = Chart(("a", "b"))
    assert len(chart.monomials_up_to(2)) == 6
    assert len(list(exponent_vectors(3, 2))) == 10
    assert len(list(words_up_to("ab", 2))) == 7


def test_linear_solves():
    assert solve([[1, 1], [1, -1]], [2, 0], 2) == [scalar(1), scalar(1)]
    assert solve([[1, 1], [1, 1]], [1, 2], 2) is None
    (v,) = kernel([[1, 1]], 2)
    assert not v[0] + v[1] and v[0]
    assert len(kernel([[0, 0]], 2)) == 2


def test_series_linear_algebra():
    order = 4
    h = HSeries.hbar(order)
    (v,) = series_kernel([[h, HSeries.constant(-1, order)]], 2, order)
    assert v[1] == v[0] * h
    assert v[0].is_unit
    unit = HSeries.from_coefficients([1, 1], order)
    (x,) = series_solve([[unit]], [HSeries.one(order)], 1, order)
    assert x == unit.inverse()


def test_product_precision_follows_valuations():
    known = HSeries.from_coefficients([0, 1], 2)
    assert (known * HSeries.hbar(6)).order == 3
    assert (HSeries.zero(1) * HSeries.hbar(6)).order == 2
    assert (HSeries.one(3) * HSeries.one(6)).order == 3
    assert (HSeries.hbar(6) * HSeries.hbar(6)).order == 6
    square = HSeries.from_coefficients([0, 0, 1], 6)
    restored = square.divide_by_hbar() * HSeries.hbar()
    assert restored.order == 6
    assert restored == square


def test_zero_polynomial_parses():
    chart = Chart(("a", "b"))
    assert chart.poly(0).is_zero
    assert chart.poly("0").is_zero
    assert chart.poly("a - a").is_zero
    assert chart.poly("0*a + b") == chart.var("b")


def test_products_with_inverse_powers():
    chart = Chart(("a", "b", "c"), frozenset({"c"}))
    g = chart.poly("-b/c**2")
    f = chart.poly("a*c**2 + c")
    assert f * g == chart.poly("-a*b - b/c")
    assert g * chart.var("c") ** 2 == -chart.var("b")
    assert (g * g).diff("c") == chart.poly("-4*b**2/c**5")
    assert (f * g).diff("c") == f.diff("c") * g + f * g.diff("c")


def test_series_coefficients():
    chart = Chart(("a", "b"), order=4)
    p = chart.poly("exp(hbar)*a + hbar*b")
    assert p.coefficient((1, 0)) == HSeries.from_expr("exp(hbar)", 4)
    assert p.coefficient((0, 1)) == HSeries.hbar(4)
    assert p.valuation == 0 and not p.is_classical
    assert p.mod_hbar() == chart.var("a")
    q = (p - chart.var("a")).truncate(2)
    assert q.order == 2
    assert q == chart.poly("hbar*a + hbar*b")
    # hbar**3 lies past what q knows
    assert q == chart.poly("hbar*a + hbar*b + hbar**3*a")
    assert p != chart.poly("exp(hbar)*a + hbar*b + hbar**3*a")
    assert p.evaluate_series({"a": 1, "b": 1}) == HSeries.from_expr("exp(hbar) + hbar", 4)
    with pytest.raises(StructureException):
        p.evaluate({"a": 1, "b": 1})


def test_hbar_is_not_a_chart_variable():
    with pytest.raises(StructureException):
        Chart(("a", "hbar"))
