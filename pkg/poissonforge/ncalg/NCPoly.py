from dataclasses import dataclass
from typing import Any, Mapping, Optional

from poissonforge.exactcoeff.HSeries import HSeries, product_order
from poissonforge.exactcoeff.scalars import format_scalar
from poissonforge.exceptions import InputException, ValuationException

Key = Any
Terms = dict[Key, HSeries]


def to_series(value: Any, order: int) -> HSeries:
    """Coerce a scalar, an ``hbar`` expression string or a series to the given order."""
    if isinstance(value, HSeries):
        return value.truncate(order)
    if isinstance(value, str):
        return HSeries.from_expr(value, order)
    return HSeries.constant(value, order)


def add_scaled(target: dict, source: Mapping[Key, HSeries], factor: Optional[HSeries] = None):
    for key, c in source.items():
        value = c if factor is None else c * factor
        if key in target:
            target[key] = target[key] + value
        else:
            target[key] = value


def format_series(c: HSeries) -> str:
    if all(not c.coeff(k) for k in range(1, c.order)):
        return format_scalar(c.coeff(0))
    return f"({c.to_expr()})"


@dataclass(frozen=True, eq=False)
class NCPoly:
    """A combination of normal-form keys with hbar-series coefficients.

    ``algebra`` is a presentation (keys are words) or a tensor power of one
    (keys are tuples of words). It supplies ``product_keys``, ``unit_key``,
    ``format_key``, ``sort_key`` and ``order``.

    The element is known modulo hbar**order as a whole: a coefficient that
    truncates to zero still caps the order, so comparisons never treat an
    unknown coefficient as an exact zero.
    """

    algebra: Any
    terms: Mapping[Key, HSeries]
    precision: Optional[int] = None

    def __post_init__(self):
        order = min(
            [c.order for c in self.terms.values()]
            + [self.algebra.order if self.precision is None else self.precision]
        )
        if order < 1:
            raise ValuationException("truncation order exhausted", index=order)
        truncated = {k: c.truncate(order) for k, c in self.terms.items()}
        object.__setattr__(self, "terms", {k: c for k, c in truncated.items() if not c.is_zero})
        object.__setattr__(self, "precision", order)

    @property
    def order(self) -> int:
        return self.precision

    @property
    def valuation(self) -> int:
        return min((c.valuation for c in self.terms.values()), default=self.order)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((self.algebra.key_degree(k) for k in self.terms), default=0)

    def coefficient(self, key: Key) -> HSeries:
        return self.terms.get(key, HSeries.zero(self.order))

    def sorted_terms(self) -> list[tuple[Key, HSeries]]:
        return sorted(self.terms.items(), key=lambda kv: self.algebra.sort_key(kv[0]))

    def _coerce(self, other: Any) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.algebra != self.algebra:
                raise InputException("elements of different algebras")
            return other
        return NCPoly(self.algebra, {self.algebra.unit_key: to_series(other, self.algebra.order)})

    def __add__(self, other: Any) -> "NCPoly":
        other = self._coerce(other)
        merged = dict(self.terms)
        add_scaled(merged, other.terms)
        return NCPoly(self.algebra, merged, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.algebra, {k: -c for k, c in self.terms.items()}, self.order)

    def __sub__(self, other: Any) -> "NCPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "NCPoly":
        return self._coerce(other) - self

    def scale(self, factor: Any) -> "NCPoly":
        c = to_series(factor, self.algebra.order)
        order = product_order(self.order, self.valuation, c.order, c.valuation)
        return NCPoly(self.algebra, {k: v * c for k, v in self.terms.items()}, order)

    def __mul__(self, other: Any) -> "NCPoly":
        if not isinstance(other, NCPoly):
            return self.scale(other)
        other = self._coerce(other)
        result: Terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                add_scaled(result, self.algebra.product_keys(k1, k2), c1 * c2)
        order = product_order(self.order, self.valuation, other.order, other.valuation)
        return NCPoly(self.algebra, result, order)

    def __rmul__(self, other: Any) -> "NCPoly":
        return self.scale(other)

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise InputException("negative powers of noncommutative elements are not defined")
        result = self._coerce(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        try:
            return (self - other).is_zero
        except InputException:
            return False

    __hash__ = None  # type: ignore

    def divide_by_hbar(self, k: int = 1) -> "NCPoly":
        if self.valuation < k:
            raise ValuationException(f"{self} is not divisible by hbar**{k}", index=self.valuation)
        return NCPoly(
            self.algebra,
            {key: c.divide_by_hbar(k) for key, c in self.terms.items()},
            self.order - k,
        )

    def times_hbar(self, k: int = 1) -> "NCPoly":
        order = min(self.order + k, self.algebra.order)
        return NCPoly(
            self.algebra,
            {key: c.times_hbar(k).truncate(order) for key, c in self.terms.items()},
            order,
        )

    def truncate(self, order: int) -> "NCPoly":
        return NCPoly(self.algebra, self.terms, min(order, self.order))

    def mod_hbar(self) -> "NCPoly":
        """The hbar**0 part, as constant series."""
        order = self.algebra.order
        return NCPoly(
            self.algebra, {k: HSeries.constant(c.coeff(0), order) for k, c in self.terms.items()}
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for key, c in self.sorted_terms():
            coeff = format_series(c)
            label = self.algebra.format_key(key)
            if label == "1":
                pieces.append(coeff)
            elif coeff == "1":
                pieces.append(label)
            elif coeff == "-1":
                pieces.append(f"-{label}")
            else:
                pieces.append(f"{coeff}*{label}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"NCPoly({self})"
