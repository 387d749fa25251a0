from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from poissonforge.exactcoeff.HSeries import HSeries
from poissonforge.exceptions import InputException
from poissonforge.ncalg.NCPoly import NCPoly, add_scaled, format_series, to_series
from poissonforge.ncalg.Presentation import Presentation, Word
from poissonforge.qmomentum.ActionExpr import ActionExpr, raw_expr, sharp_expr
from poissonforge.report import CheckResult

FormKey = tuple[Word, Word]


@dataclass(frozen=True, eq=False)
class NCOneForm:
    """Σ c·a db over normal words a, b of a presentation; d1 is kept as a key.

    The product follows db·dc = b dc − d(cb) + c db, which makes
    a db ↦ a[b,·] multiplicative.
    """

    algebra: Presentation
    terms: Mapping[FormKey, HSeries]

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: c for k, c in self.terms.items() if not c.is_zero})

    @classmethod
    def from_pairs(cls, algebra: Presentation, pairs: Sequence[tuple[Any, Any]]) -> "NCOneForm":
        """Σ a db for pairs of polynomial descriptions (or elements)."""
        total = cls(algebra, {})
        for a, b in pairs:
            total = total + cls.pair(algebra.poly(a), algebra.poly(b))
        return total

    @classmethod
    def pair(cls, a: NCPoly, b: NCPoly) -> "NCOneForm":
        if a.algebra is not b.algebra:
            raise InputException("one-form factors lie in different algebras")
        terms: dict[FormKey, HSeries] = {}
        for u, x in a.terms.items():
            for v, y in b.terms.items():
                add_scaled(terms, {(u, v): x * y})
        return cls(a.algebra, terms)

    @classmethod
    def d(cls, b: NCPoly) -> "NCOneForm":
        return cls.pair(b.algebra.one, b)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "NCOneForm"):
        if other.algebra is not self.algebra:
            raise InputException("one-forms over different algebras")

    def __add__(self, other: "NCOneForm") -> "NCOneForm":
        self._check(other)
        terms = dict(self.terms)
        add_scaled(terms, other.terms)
        return NCOneForm(self.algebra, terms)

    def __neg__(self) -> "NCOneForm":
        return self.scale(-1)

    def __sub__(self, other: "NCOneForm") -> "NCOneForm":
        return self + (-other)

    def scale(self, factor: Any) -> "NCOneForm":
        c = to_series(factor, self.algebra.order)
        return NCOneForm(self.algebra, {k: v * c for k, v in self.terms.items()})

    def left_multiply(self, x: NCPoly) -> "NCOneForm":
        total = NCOneForm(self.algebra, {})
        for (a, b), c in self.terms.items():
            total = total + NCOneForm.pair((x * self.algebra.word(*a)).scale(c), self.algebra.word(*b))
        return total

    def pairs(self) -> list[tuple[NCPoly, NCPoly]]:
        return [
            (self.algebra.word(*a).scale(c), self.algebra.word(*b)) for (a, b), c in self.terms.items()
        ]

    def __mul__(self, other: "NCOneForm") -> "NCOneForm":
        """(a db)(a' db') = a[b,a'] db' + aa'b db' − aa' d(b'b) + aa'b' db."""
        self._check(other)
        pair = NCOneForm.pair
        total = NCOneForm(self.algebra, {})
        for a, b in self.pairs():
            for a2, b2 in other.pairs():
                aa2 = a * a2
                total = (
                    total
                    + pair(a * (b * a2 - a2 * b), b2)
                    + pair(aa2 * b, b2)
                    - pair(aa2, b2 * b)
                    + pair(aa2 * b2, b)
                )
        return total

    def raw(self) -> ActionExpr:
        """a db ↦ a[b,·], without the hbar normalisation."""
        return raw_expr(self.pairs())

    def sharp(self) -> ActionExpr:
        """a db ↦ (1/hbar)·a[b,·]."""
        return sharp_expr(self.pairs())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        fmt = self.algebra.format_key
        parts = []
        key = self.algebra.sort_key
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (key(kv[0][0]), key(kv[0][1]))):
            prefix = "" if not a else f"{fmt(a)}*"
            parts.append(f"{format_series(c)}*{prefix}d({fmt(b)})")
        return " + ".join(parts)


def check_raw_homomorphism(
    u: NCOneForm, v: NCOneForm, domain: Sequence[Word]
) -> CheckResult:
    """(uv)^raw = u^raw ∘ v^raw on the given monomials."""
    product = (u * v).raw()
    left, right = u.raw(), v.raw()
    defects = []
    for word in domain:
        f = u.algebra.word(*word)
        diff = product.apply(f) - left.apply(right.apply(f))
        if not diff.is_zero:
            defects.append((u.algebra.format_key(word), diff))
    return CheckResult.from_defects("oneform_product_homomorphism", defects)


def endomorphisms_agree(
    first: ActionExpr, second: ActionExpr, algebra: Presentation, domain: Sequence[Word], name: str
) -> CheckResult:
    defects = []
    for word in domain:
        f = algebra.word(*word)
        diff = first.apply(f) - second.apply(f)
        if not diff.is_zero:
            defects.append((algebra.format_key(word), diff))
    return CheckResult.from_defects(name, defects)
