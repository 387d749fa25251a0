from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Optional, Union

from sympy import Add, Expr, I, Mul, Symbol, expand, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.domains import QQ_I
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, PolyRing

from poissonforge.exactcoeff.HSeries import (
    DEFAULT_ORDER,
    HBAR_SYMBOL,
    HSeries,
    product_order,
)
from poissonforge.exactcoeff.scalars import Scalar, scalar, to_sympy
from poissonforge.exceptions import InputException, StructureException
from poissonforge.utils import exponent_vectors

Exponents = tuple[int, ...]
# chart exponents followed by the power of hbar
FlatTerms = dict[Exponents, Scalar]


@dataclass(frozen=True)
class Chart:
    """An ordered list of coordinate names; some may be declared invertible.

    Polynomials on a chart carry hbar-series coefficients known modulo
    ``hbar**order``.
    """

    variables: tuple[str, ...]
    invertible: frozenset[str] = field(default_factory=frozenset)
    order: int = field(default=DEFAULT_ORDER, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "invertible", frozenset(self.invertible))
        if not self.variables:
            raise StructureException("a chart needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise StructureException(f"duplicate chart variables in {self.variables}")
        if HBAR_SYMBOL.name in self.variables:
            raise StructureException("hbar cannot be a chart variable")
        unknown = self.invertible - set(self.variables)
        if unknown:
            raise StructureException(f"invertible variables {sorted(unknown)} not in chart")
        if self.order < 1:
            raise StructureException(f"truncation order must be positive, got {self.order}")

    @cached_property
    def ring(self) -> PolyRing:
        """Q(i)[variables, hbar]; Laurent exponents live in a separate shift."""
        return PolyRing(tuple(self.symbols.values()) + (HBAR_SYMBOL,), QQ_I)

    @cached_property
    def symbols(self) -> dict[str, Symbol]:
        return {v: Symbol(v) for v in self.variables}

    @property
    def dim(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputException(f"unknown variable {name!r} on chart {self.variables}", key=name)

    def assemble(self, flat: Mapping[Exponents, Scalar], order: Optional[int] = None) -> "CoordPoly":
        """Build from (chart exponents + hbar power) -> scalar, dropping powers of hbar past the order."""
        order = self.order if order is None else order
        kept = {k: c for k, c in flat.items() if c and k[-1] < order}
        if any(k[-1] < 0 for k in kept):
            raise StructureException("negative power of hbar in a coordinate polynomial")
        if not kept:
            return CoordPoly(self, self.ring.zero, (0,) * self.dim, order)
        shift = tuple(min(0, min(k[i] for k in kept)) for i in range(self.dim))
        moved = {tuple(k[i] - shift[i] for i in range(self.dim)) + (k[-1],): c for k, c in kept.items()}
        return CoordPoly(self, self.ring.from_dict(moved), shift, order)

    def var(self, name: str) -> "CoordPoly":
        exps = [0] * (self.dim + 1)
        exps[self.index(name)] = 1
        return self.assemble({tuple(exps): QQ_I.one})

    def hbar(self, k: int = 1) -> "CoordPoly":
        return self.assemble({(0,) * self.dim + (k,): QQ_I.one})

    def const(self, value: Any) -> "CoordPoly":
        return self.from_terms({(0,) * self.dim: value})

    @property
    def zero(self) -> "CoordPoly":
        return self.assemble({})

    @property
    def one(self) -> "CoordPoly":
        return self.const(1)

    def from_terms(self, terms: Mapping[Exponents, Any], order: Optional[int] = None) -> "CoordPoly":
        """Build from chart exponents -> scalar or HSeries coefficient."""
        order = self.order if order is None else order
        flat: FlatTerms = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.dim:
                raise InputException(f"exponent vector {exps} does not fit chart {self.variables}")
            if isinstance(c, HSeries):
                order = min(order, c.order)
                pieces = [(k, c.coeff(k)) for k in range(c.order)]
            else:
                pieces = [(0, scalar(c))]
            for k, value in pieces:
                key = exps + (k,)
                flat[key] = flat.get(key, QQ_I.zero) + value
        return self.assemble(flat, order)

    def poly(self, expr: Union[str, Expr, int, "CoordPoly"]) -> "CoordPoly":
        """Parse a Laurent polynomial such as ``"(1+b*c)/a"`` or ``"exp(hbar)*a*b"`` on this chart."""
        if isinstance(expr, CoordPoly):
            return expr if expr.chart == self else expr.moved_to(self)
        try:
            parsed = sympify(expr, locals={**self.symbols, "hbar": HBAR_SYMBOL, "i": I})
        except (SympifyError, SyntaxError, TypeError) as e:
            raise InputException(f"cannot parse polynomial {expr!r}") from e
        symbols = list(self.symbols.values())
        stray = parsed.free_symbols - set(symbols) - {HBAR_SYMBOL}
        if stray:
            raise InputException(
                f"{expr!r} uses {sorted(map(str, stray))} outside chart {self.variables}"
            )
        terms: dict[Exponents, HSeries] = {}
        for term in Add.make_args(expand(parsed)):
            if term.is_zero:
                continue
            coeff, monomial = term.as_independent(*symbols, as_Add=False)
            exps = [0] * self.dim
            for base, power in monomial.as_powers_dict().items():
                if base == 1:
                    continue
                if base not in symbols or not power.is_Integer:
                    raise InputException(f"{expr!r} is not a Laurent polynomial on {self.variables}")
                exps[symbols.index(base)] += int(power)
            key = tuple(exps)
            value = self._coefficient(coeff, expr)
            terms[key] = terms[key] + value if key in terms else value
        return self.from_terms(terms)

    def _coefficient(self, coeff: Expr, source: Any) -> HSeries:
        if coeff.has(HBAR_SYMBOL):
            return HSeries.from_expr(coeff, self.order)
        try:
            return HSeries.constant(QQ_I.from_sympy(coeff), self.order)
        except (CoercionFailed, TypeError) as e:
            raise InputException(f"coefficient {coeff} of {source!r} is not in Q(i)") from e

    def monomials_up_to(self, degree: int) -> list["CoordPoly"]:
        return [self.from_terms({e: 1}) for e in exponent_vectors(self.dim, degree)]


@dataclass(frozen=True, eq=False)
class CoordPoly:
    """A Laurent polynomial on a chart with hbar-series coefficients.

    Stored as ``x**shift * poly`` with ``poly`` in Q(i)[variables, hbar] and
    the shift as close to zero as the terms allow, so each polynomial has one
    representation. Negative exponents are only allowed on invertible
    variables; everything is known modulo ``hbar**order``.
    """

    chart: Chart
    poly: PolyElement
    shift: Exponents
    order: int

    def __post_init__(self):
        for name, e in zip(self.chart.variables, self.shift):
            if e < 0 and name not in self.chart.invertible:
                raise StructureException(
                    f"negative power of non-invertible variable {name}", defect=self
                )

    def flat_terms(self) -> list[tuple[Exponents, Scalar]]:
        """(chart exponents + hbar power, scalar) pairs in lexicographic order."""
        n = self.chart.dim
        found = [
            (tuple(m[i] + self.shift[i] for i in range(n)) + (m[n],), c)
            for m, c in self.poly.items()
            if c
        ]
        return sorted(found)

    def terms(self) -> list[tuple[Exponents, HSeries]]:
        """Chart monomials with their series coefficients, in lexicographic order."""
        grouped: dict[Exponents, dict[int, Scalar]] = {}
        for key, c in self.flat_terms():
            grouped.setdefault(key[:-1], {})[key[-1]] = c
        return [
            (exps, HSeries.from_coefficients([series.get(k, 0) for k in range(self.order)], self.order))
            for exps, series in sorted(grouped.items())
        ]

    def as_dict(self) -> dict[Exponents, HSeries]:
        return dict(self.terms())

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_constant(self) -> bool:
        return all(not any(key[:-1]) for key, _ in self.flat_terms())

    @property
    def is_classical(self) -> bool:
        """No positive power of hbar occurs."""
        return all(not key[-1] for key, _ in self.flat_terms())

    @property
    def valuation(self) -> int:
        return min((key[-1] for key, _ in self.flat_terms()), default=self.order)

    def coefficient(self, exps: Exponents) -> HSeries:
        return self.as_dict().get(tuple(exps), HSeries.zero(self.order))

    def constant_term(self) -> HSeries:
        return self.coefficient((0,) * self.chart.dim)

    def constant_value(self) -> Scalar:
        if not self.is_classical:
            raise StructureException(f"{self} depends on hbar", defect=self)
        return self.constant_term().coeff(0)

    @property
    def degree(self) -> int:
        return max((sum(key[:-1]) for key, _ in self.flat_terms()), default=0)

    def _with(self, poly: PolyElement, shift: Exponents, order: int) -> "CoordPoly":
        n = self.chart.dim
        flat = {tuple(m[i] + shift[i] for i in range(n)) + (m[n],): c for m, c in poly.items()}
        return self.chart.assemble(flat, order)

    def _lift(self, other: Any) -> "CoordPoly":
        if isinstance(other, CoordPoly):
            if other.chart != self.chart:
                raise InputException(
                    f"chart mismatch: {self.chart.variables} vs {other.chart.variables}"
                )
            return other
        return self.chart.const(other)

    def _rebased(self, shift: Exponents) -> PolyElement:
        """``poly`` relative to a shift no larger than our own."""
        if shift == self.shift:
            return self.poly
        n = self.chart.dim
        moved = {
            tuple(m[i] + self.shift[i] - shift[i] for i in range(n)) + (m[n],): c
            for m, c in self.poly.items()
        }
        return self.chart.ring.from_dict(moved)

    def __add__(self, other: Any) -> "CoordPoly":
        other = self._lift(other)
        shift = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        total = self._rebased(shift) + other._rebased(shift)
        return self._with(total, shift, min(self.order, other.order))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "CoordPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "CoordPoly":
        return self._lift(other) - self

    def __neg__(self) -> "CoordPoly":
        return CoordPoly(self.chart, -self.poly, self.shift, self.order)

    def __mul__(self, other: Any) -> "CoordPoly":
        other = self._lift(other)
        order = product_order(self.order, self.valuation, other.order, other.valuation)
        shift = tuple(a + b for a, b in zip(self.shift, other.shift))
        return self._with(self.poly * other.poly, shift, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CoordPoly":
        if n >= 0:
            result = self.chart.one
            for _ in range(n):
                result = result * self
            return result
        return self.inverse_monomial() ** (-n)

    def inverse_monomial(self) -> "CoordPoly":
        terms = self.terms()
        if len(terms) != 1 or not terms[0][1].is_unit:
            raise StructureException(f"{self} is not invertible on its chart", defect=self)
        exps, c = terms[0]
        return self.chart.from_terms({tuple(-e for e in exps): c.inverse()}, self.order)

    def __eq__(self, other: Any) -> bool:
        try:
            return (self - other).is_zero
        except InputException:
            return False

    __hash__ = None  # type: ignore

    def truncate(self, order: int) -> "CoordPoly":
        return self._with(self.poly, self.shift, min(order, self.order))

    def mod_hbar(self) -> "CoordPoly":
        """The hbar**0 part."""
        return self.chart.assemble(
            {key: c for key, c in self.flat_terms() if not key[-1]}, self.order
        )

    def diff(self, name: str) -> "CoordPoly":
        i = self.chart.index(name)
        result: FlatTerms = {}
        for key, c in self.flat_terms():
            if key[i]:
                lowered = list(key)
                lowered[i] -= 1
                result[tuple(lowered)] = c * key[i]
        return self.chart.assemble(result, self.order)

    def subs(
        self, mapping: Mapping[str, "CoordPoly"], chart: Optional[Chart] = None
    ) -> "CoordPoly":
        """Substitute polynomials for variables; unmapped variables must exist on the target chart."""
        target = chart or next((p.chart for p in mapping.values()), self.chart)
        images = []
        for name in self.chart.variables:
            if name in mapping:
                images.append(target.poly(mapping[name]))
            else:
                images.append(target.var(name))
        result = target.assemble({}, self.order)
        for key, c in self.flat_terms():
            term = target.assemble({(0,) * target.dim + (key[-1],): c}, self.order)
            for image, e in zip(images, key[:-1]):
                if e:
                    term = term * image**e
            result = result + term
        return result

    def moved_to(self, chart: Chart) -> "CoordPoly":
        return self.subs({}, chart)

    def evaluate_series(self, point: Mapping[str, Any]) -> HSeries:
        mapping = {k: self.chart.const(v) for k, v in point.items()}
        return self.subs(mapping, self.chart).constant_term()

    def evaluate(self, point: Mapping[str, Any]) -> Scalar:
        """The value at a point of a polynomial that does not involve hbar."""
        if not self.is_classical:
            raise StructureException(f"{self} depends on hbar; use evaluate_series", defect=self)
        return self.evaluate_series(point).coeff(0)

    def to_expr(self) -> Expr:
        symbols = list(self.chart.symbols.values()) + [HBAR_SYMBOL]
        return Add(
            *[
                to_sympy(c) * Mul(*[s**e for s, e in zip(symbols, key) if e])
                for key, c in self.flat_terms()
            ]
        )

    def __str__(self) -> str:
        return str(self.to_expr())

    def __repr__(self) -> str:
        return f"CoordPoly({self})"


def poly_diff(p: CoordPoly, var: str) -> CoordPoly:
    return p.diff(var)


def chart_of(polys: Iterable[CoordPoly]) -> Chart:
    charts = {p.chart for p in polys}
    if len(charts) != 1:
        raise InputException("polynomials live on different charts")
    return charts.pop()
