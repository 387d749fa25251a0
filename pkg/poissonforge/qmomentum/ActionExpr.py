"""Endomorphism expressions over a presented algebra.

Leaves multiply by, or take the commutator with, a fixed element. Nodes
scale, add, compose (rightmost applied first) and divide by a power of hbar.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from poissonforge.exactcoeff.HSeries import HSeries
from poissonforge.exceptions import InputException, ValuationException
from poissonforge.ncalg.NCPoly import NCPoly, to_series
from poissonforge.ncalg.Presentation import Presentation, Word


class ActionExpr(ABC):
    @abstractmethod
    def apply(self, f: NCPoly) -> NCPoly:
        raise NotImplementedError()

    def __call__(self, f: NCPoly) -> NCPoly:
        return self.apply(f)


@dataclass(frozen=True)
class Identity(ActionExpr):
    def apply(self, f: NCPoly) -> NCPoly:
        return f

    def __str__(self) -> str:
        return "id"


@dataclass(frozen=True, eq=False)
class LeftMult(ActionExpr):
    by: NCPoly

    def apply(self, f: NCPoly) -> NCPoly:
        return self.by * f

    def __str__(self) -> str:
        return f"({self.by})·"


@dataclass(frozen=True, eq=False)
class RightMult(ActionExpr):
    by: NCPoly

    def apply(self, f: NCPoly) -> NCPoly:
        return f * self.by

    def __str__(self) -> str:
        return f"·({self.by})"


@dataclass(frozen=True, eq=False)
class CommutatorWith(ActionExpr):
    by: NCPoly

    def apply(self, f: NCPoly) -> NCPoly:
        return self.by * f - f * self.by

    def __str__(self) -> str:
        return f"[{self.by},·]"


@dataclass(frozen=True, eq=False)
class Scale(ActionExpr):
    factor: HSeries
    of: ActionExpr

    def apply(self, f: NCPoly) -> NCPoly:
        return self.of.apply(f).scale(self.factor)

    def __str__(self) -> str:
        return f"({self.factor.to_expr()})*{self.of}"


@dataclass(frozen=True, eq=False)
class Sum(ActionExpr):
    parts: tuple[ActionExpr, ...]

    def apply(self, f: NCPoly) -> NCPoly:
        total = f.algebra.zero
        for part in self.parts:
            total = total + part.apply(f)
        return total

    def __str__(self) -> str:
        return " + ".join(str(p) for p in self.parts) or "0"


@dataclass(frozen=True, eq=False)
class Compose(ActionExpr):
    parts: tuple[ActionExpr, ...]

    def apply(self, f: NCPoly) -> NCPoly:
        for part in reversed(self.parts):
            f = part.apply(f)
        return f

    def __str__(self) -> str:
        return "∘".join(f"({p})" for p in self.parts)


@dataclass(frozen=True, eq=False)
class HbarDivide(ActionExpr):
    """(1/hbar**k)·of; raises ValuationException where the image is not divisible."""

    k: int
    of: ActionExpr

    def apply(self, f: NCPoly) -> NCPoly:
        image = self.of.apply(f)
        if image.valuation < self.k:
            raise ValuationException(
                f"{self.of} applied to {f} is not divisible by hbar**{self.k}",
                index=image.valuation,
            )
        return image.divide_by_hbar(self.k)

    def __str__(self) -> str:
        return f"hbar**-{self.k}*({self.of})"


def raw_expr(pairs: Sequence[tuple[NCPoly, NCPoly]]) -> ActionExpr:
    """Σ a[b,·] for the pairs (a, b)."""
    return Sum(tuple(Compose((LeftMult(a), CommutatorWith(b))) for a, b in pairs))


def sharp_expr(pairs: Sequence[tuple[NCPoly, NCPoly]]) -> ActionExpr:
    return HbarDivide(1, raw_expr(pairs))


def parse_action(spec: Any, algebra: Presentation) -> ActionExpr:
    """Build an expression from its JSON form.

    ``"id"``, ``{"left": p}``, ``{"right": p}``, ``{"commutator": p}``,
    ``{"compose": [...]}``, ``{"sum": [...]}``, ``{"scale": c, "of": e}``,
    ``{"hdiv": k, "of": e}`` and ``{"sharp": [[a, b], ...]}``.
    """
    if spec == "id":
        return Identity()
    if not isinstance(spec, Mapping):
        raise InputException(f"cannot read action expression {spec!r}")
    if "left" in spec:
        return LeftMult(algebra.poly(spec["left"]))
    if "right" in spec:
        return RightMult(algebra.poly(spec["right"]))
    if "commutator" in spec:
        return CommutatorWith(algebra.poly(spec["commutator"]))
    if "compose" in spec:
        return Compose(tuple(parse_action(part, algebra) for part in spec["compose"]))
    if "sum" in spec:
        return Sum(tuple(parse_action(part, algebra) for part in spec["sum"]))
    if "scale" in spec:
        return Scale(to_series(spec["scale"], algebra.order), parse_action(spec["of"], algebra))
    if "hdiv" in spec:
        k = spec["hdiv"]
        if not isinstance(k, int) or k < 0:
            raise InputException(f"hbar divisor must be a non-negative integer, got {k!r}", key="hdiv")
        return HbarDivide(k, parse_action(spec["of"], algebra))
    if "sharp" in spec:
        pairs = []
        for pair in spec["sharp"]:
            if len(pair) != 2:
                raise InputException(f"sharp expects [a, b] pairs, got {pair!r}", key="sharp")
            pairs.append((algebra.poly(pair[0]), algebra.poly(pair[1])))
        return sharp_expr(pairs)
    raise InputException(f"unknown action expression {sorted(spec)!r}")


def divisibility_defects(expr: ActionExpr, domain: Sequence[Word], algebra: Presentation) -> list:
    """Monomials of the domain on which ``expr`` hits a non-divisible hbar division."""
    defects = []
    for word in domain:
        try:
            expr.apply(algebra.word(*word))
        except ValuationException as e:
            defects.append((algebra.format_key(word), str(e)))
    return defects
