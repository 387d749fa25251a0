import logging
from dataclasses import dataclass
from typing import Any, Iterable, Union

from sympy import Expr, Symbol, expand, series, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.domains import QQ_I
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.ring_series import rs_exp, rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, ring

from poissonforge.exactcoeff.scalars import Scalar, format_scalar, scalar
from poissonforge.exceptions import InputException, ValuationException

logger = logging.getLogger(__name__)

HBAR_RING, _HBAR = ring("hbar", QQ_I)
HBAR_SYMBOL = Symbol("hbar")

DEFAULT_ORDER = 6

Coefficient = Union["HSeries", Scalar, int]


def product_order(order_a: int, valuation_a: int, order_b: int, valuation_b: int) -> int:
    """Precision of a product: the unknown tail of one factor is pushed up by the other's valuation."""
    return min(order_a + valuation_b, order_b + valuation_a, max(order_a, order_b))


@dataclass(frozen=True, eq=False)
class HSeries:
    """A formal power series in hbar over Q(i), known modulo hbar**order.

    Products and sums live at the smaller order of their operands, so a series
    that lost precision through hbar-division never compares equal on
    coefficients it does not know.
    """

    poly: PolyElement
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValuationException("truncation order exhausted", index=self.order)
        object.__setattr__(self, "poly", rs_trunc(self.poly, _HBAR, self.order))

    @classmethod
    def constant(cls, value: Any, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls(HBAR_RING(scalar(value)), order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls(HBAR_RING.zero, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls(HBAR_RING.one, order)

    @classmethod
    def hbar(cls, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls(_HBAR, order)

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[Any], order: int | None = None) -> "HSeries":
        values = [scalar(c) for c in coefficients]
        if order is None:
            order = max(len(values), 1)
        terms = {(k,): c for k, c in enumerate(values) if c}
        return cls(HBAR_RING.from_dict(terms) if terms else HBAR_RING.zero, order)

    @classmethod
    def from_expr(cls, expr: Union[str, Expr, int], order: int = DEFAULT_ORDER) -> "HSeries":
        """Expand a sympy expression in ``hbar`` (e.g. ``exp(hbar/4)``)."""
        try:
            parsed = sympify(expr, locals={"hbar": HBAR_SYMBOL, "i": sympify("I")})
        except (SympifyError, SyntaxError, TypeError) as e:
            raise InputException(f"cannot parse series {expr!r}") from e
        stray = parsed.free_symbols - {HBAR_SYMBOL}
        if stray:
            raise InputException(f"series {expr!r} depends on {sorted(map(str, stray))}")
        if HBAR_SYMBOL in parsed.free_symbols:
            parsed = series(parsed, HBAR_SYMBOL, 0, order).removeO()
        try:
            poly = HBAR_RING.from_expr(expand(parsed))
        except (CoercionFailed, ValueError, TypeError) as e:
            raise InputException(
                f"series {expr!r} is not a power series over Q(i) in hbar"
            ) from e
        return cls(poly, order)

    @property
    def coefficients(self) -> tuple[Scalar, ...]:
        return tuple(self.coeff(k) for k in range(self.order))

    def coeff(self, k: int) -> Scalar:
        return self.poly.get((k,), QQ_I.zero)

    @property
    def valuation(self) -> int:
        if not self.poly:
            return self.order
        return min(monom[0] for monom in self.poly.keys())

    @property
    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_unit(self) -> bool:
        return bool(self.coeff(0))

    def truncate(self, order: int) -> "HSeries":
        return HSeries(self.poly, min(order, self.order))

    def clip(self, k: int) -> "HSeries":
        """Drop the terms from hbar**k on, keeping the order."""
        if k >= self.order:
            return self
        return HSeries(rs_trunc(self.poly, _HBAR, k), self.order)

    def _coerce(self, other: Coefficient) -> "HSeries":
        if isinstance(other, HSeries):
            return other
        return HSeries.constant(other, self.order)

    def __add__(self, other: Coefficient) -> "HSeries":
        other = self._coerce(other)
        return HSeries(self.poly + other.poly, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self) -> "HSeries":
        return HSeries(-self.poly, self.order)

    def __sub__(self, other: Coefficient) -> "HSeries":
        other = self._coerce(other)
        return HSeries(self.poly - other.poly, min(self.order, other.order))

    def __rsub__(self, other: Coefficient) -> "HSeries":
        return self._coerce(other) - self

    def __mul__(self, other: Coefficient) -> "HSeries":
        if not isinstance(other, HSeries):
            return HSeries(self.poly * scalar(other), self.order)
        order = product_order(self.order, self.valuation, other.order, other.valuation)
        return HSeries(rs_mul(self.poly, other.poly, _HBAR, order), order)

    __rmul__ = __mul__

    def __truediv__(self, other: Coefficient) -> "HSeries":
        if not isinstance(other, HSeries):
            return HSeries(self.poly * (1 / scalar(other)), self.order)
        return self * other.inverse()

    def __pow__(self, n: int) -> "HSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = HSeries.one(self.order)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, HSeries):
            try:
                other = self._coerce(other)
            except InputException:
                return NotImplemented
        order = min(self.order, other.order)
        return not rs_trunc(self.poly - other.poly, _HBAR, order)

    __hash__ = None  # type: ignore

    def inverse(self) -> "HSeries":
        if not self.is_unit:
            raise ValuationException("series is not a unit", index=0)
        return HSeries(rs_series_inversion(self.poly, _HBAR, self.order), self.order)

    def exp(self) -> "HSeries":
        """Truncated exponential; defined only for series without constant term."""
        if self.coeff(0):
            raise ValuationException(
                "exponential needs a series without constant term", index=0
            )
        if self.is_zero:
            return HSeries.one(self.order)
        return HSeries(rs_exp(self.poly, _HBAR, self.order), self.order)

    def divide_by_hbar(self, k: int = 1) -> "HSeries":
        """Shift coefficients down by k; the result is known to order N - k."""
        if k < 0:
            return self.times_hbar(-k)
        if self.valuation < k:
            raise ValuationException(
                f"series {self} is not divisible by hbar**{k}", index=self.valuation
            )
        shifted = {(monom[0] - k,): c for monom, c in self.poly.items()}
        poly = HBAR_RING.from_dict(shifted) if shifted else HBAR_RING.zero
        return HSeries(poly, self.order - k)

    def times_hbar(self, k: int = 1) -> "HSeries":
        return HSeries(self.poly * _HBAR**k, self.order + k)

    def to_expr(self) -> Expr:
        return self.poly.as_expr()

    def to_json(self) -> list[str]:
        return [format_scalar(c) for c in self.coefficients]

    def __str__(self) -> str:
        if self.is_zero:
            return f"O(hbar**{self.order})"
        return f"{self.to_expr()} + O(hbar**{self.order})"

    def __repr__(self) -> str:
        return f"HSeries({self})"


def series_exp(s: HSeries) -> HSeries:
    return s.exp()


def divide_by_hbar(s: HSeries, k: int) -> HSeries:
    return s.divide_by_hbar(k)


def as_series(value: Coefficient, order: int) -> HSeries:
    if isinstance(value, HSeries):
        return value
    return HSeries.constant(value, order)
