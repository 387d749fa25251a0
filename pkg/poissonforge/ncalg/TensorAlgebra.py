from dataclasses import dataclass
from typing import Any, Callable, Mapping, Optional, Sequence

from poissonforge.exactcoeff.HSeries import HSeries, product_order
from poissonforge.exceptions import InputException
from poissonforge.ncalg.NCPoly import NCPoly, Terms, add_scaled, to_series
from poissonforge.ncalg.Presentation import Presentation, Word

TensorKey = tuple[Word, ...]
LegMap = Callable[[Word], NCPoly]


@dataclass(frozen=True)
class TensorAlgebra:
    """The k-th tensor power of a presentation; k = 0 is the coefficient ring."""

    base: Presentation
    arity: int

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def name(self) -> str:
        return f"{self.base.name}^{self.arity}"

    @property
    def unit_key(self) -> TensorKey:
        return ((),) * self.arity

    def sort_key(self, key: TensorKey) -> tuple:
        return tuple(self.base.sort_key(w) for w in key)

    def key_degree(self, key: TensorKey) -> int:
        return sum(len(w) for w in key)

    def format_key(self, key: TensorKey) -> str:
        if not self.arity:
            return "1"
        return "⊗".join(self.base.format_key(w) for w in key)

    def product_keys(self, u: TensorKey, v: TensorKey) -> Terms:
        result: Terms = {(): HSeries.one(self.order)}
        for a, b in zip(u, v):
            result = _extend(result, self.base.product_keys(a, b))
        return result

    def element(self, terms: Mapping[TensorKey, Any], precision: Optional[int] = None) -> NCPoly:
        total: Terms = {}
        for key, c in terms.items():
            if len(key) != self.arity:
                raise InputException(f"tensor key {key} does not have {self.arity} legs")
            legs: Terms = {(): to_series(c, self.order)}
            for w in key:
                legs = _extend(legs, self.base.normal_form_word(tuple(w), precision=precision))
            add_scaled(total, legs)
        return NCPoly(self, total, precision)

    def tensor(self, *factors: NCPoly) -> NCPoly:
        if len(factors) != self.arity:
            raise InputException(f"{self.name} needs {self.arity} factors")
        terms: Terms = {(): HSeries.one(self.order)}
        for f in factors:
            if f.algebra is not self.base:
                raise InputException(f"factor is not an element of {self.base.name}")
            terms = _extend(terms, f.terms)
        return NCPoly(self, terms, _chained_order(factors, self.order))

    def scalar(self, value: Any) -> NCPoly:
        return NCPoly(self, {self.unit_key: to_series(value, self.order)})

    @property
    def one(self) -> NCPoly:
        return self.scalar(1)

    @property
    def zero(self) -> NCPoly:
        return NCPoly(self, {})


def _extend(keys: Terms, leg: Mapping[Word, HSeries]) -> Terms:
    result: Terms = {}
    for key, c in keys.items():
        for w, d in leg.items():
            add_scaled(result, {key + (w,): c * d})
    return result


def _chained_order(factors: Sequence[NCPoly], order: int) -> int:
    valuation = 0
    for f in factors:
        order = product_order(order, valuation, f.order, f.valuation)
        valuation += f.valuation
    return order


def tensor_power(base: Presentation, arity: int) -> TensorAlgebra:
    return TensorAlgebra(base, arity)


def legs_of(p: NCPoly) -> tuple[Presentation, int, Terms]:
    """Base presentation, arity and tuple-keyed terms of a plain or tensor element."""
    if isinstance(p.algebra, Presentation):
        return p.algebra, 1, {(w,): c for w, c in p.terms.items()}
    return p.algebra.base, p.algebra.arity, dict(p.terms)


def as_tensor(p: NCPoly) -> NCPoly:
    base, arity, terms = legs_of(p)
    return NCPoly(TensorAlgebra(base, arity), terms, p.order)


def tensor_product(*elements: NCPoly) -> NCPoly:
    base = legs_of(elements[0])[0]
    arity = 0
    result = {(): HSeries.one(base.order)}
    for e in elements:
        e_base, e_arity, e_terms = legs_of(e)
        if e_base is not base:
            raise InputException("tensor factors over different algebras")
        arity += e_arity
        nxt: Terms = {}
        for key, c in result.items():
            for k, d in e_terms.items():
                add_scaled(nxt, {key + k: c * d})
        result = nxt
    return NCPoly(TensorAlgebra(base, arity), result, _chained_order(elements, base.order))


def permute(t: NCPoly, perm: Sequence[int]) -> NCPoly:
    """Leg ``i`` of the result is leg ``perm[i]`` of ``t``."""
    terms = {tuple(key[p] for p in perm): c for key, c in t.terms.items()}
    return NCPoly(t.algebra, terms, t.order)


def flip(t: NCPoly) -> NCPoly:
    return permute(t, (1, 0))


def place(t: NCPoly, legs: Sequence[int], arity: int) -> NCPoly:
    """Embed ``t`` into a higher tensor power, e.g. r -> r13 with legs (0, 2)."""
    base, _, terms = legs_of(t)
    placed = {}
    for key, c in terms.items():
        new = [()] * arity
        for leg, w in zip(legs, key):
            new[leg] = w
        placed[tuple(new)] = c
    return NCPoly(TensorAlgebra(base, arity), placed, t.order)


def apply_legs(t: NCPoly, maps: Sequence[Optional[LegMap]]) -> NCPoly:
    """Apply one map per leg (``None`` keeps the leg) and concatenate the results."""
    base, arity, terms = legs_of(t)
    if len(maps) != arity:
        raise InputException(f"{len(maps)} leg maps for a tensor with {arity} legs")
    out_arity = sum(1 if f is None else getattr(f, "arity", 1) for f in maps)
    result: Terms = {}
    order = t.order
    for key, c in terms.items():
        partial: Terms = {(): c}
        for w, f in zip(key, maps):
            if f is None:
                image = {(w,): HSeries.one(base.order)}
            else:
                value = f(w)
                order = min(order, product_order(t.order, c.valuation, value.order, value.valuation))
                image_base, _, image = legs_of(value)
                if image_base is not base:
                    raise InputException("leg map leaves the base algebra")
            nxt: Terms = {}
            for k1, a in partial.items():
                for k2, b in image.items():
                    add_scaled(nxt, {k1 + k2: a * b})
            partial = nxt
        add_scaled(result, partial)
    return NCPoly(TensorAlgebra(base, out_arity), result, order)


def multiply_legs(t: NCPoly) -> NCPoly:
    """m: A⊗...⊗A -> A."""
    base, _, terms = legs_of(t)
    total = base.zero
    for key, c in terms.items():
        value = base.one
        for w in key:
            value = value * NCPoly(base, base.normal_form_word(w))
        total = total + value.scale(c)
    return total.truncate(t.order)
