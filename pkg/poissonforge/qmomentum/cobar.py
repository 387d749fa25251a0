"""The coproduct extended to tensor words as an odd derivation."""

from itertools import product
from typing import Mapping

from poissonforge.exactcoeff.HSeries import HSeries
from poissonforge.ncalg.AlgebraMap import AlgebraMap
from poissonforge.ncalg.NCPoly import add_scaled
from poissonforge.ncalg.Presentation import Word
from poissonforge.report import CheckResult

TensorWord = tuple[Word, ...]
Chain = dict[TensorWord, HSeries]


def coboundary(coproduct: AlgebraMap, chain: Mapping[TensorWord, HSeries]) -> Chain:
    """Δ(x1⊗…⊗xn) = Σ_i (−1)^i x1⊗…⊗Δ(xi)⊗…⊗xn, legs counted from zero."""
    result: Chain = {}
    for legs, c in chain.items():
        for i, leg in enumerate(legs):
            sign = -c if i % 2 else c
            for (u, v), d in coproduct(leg).terms.items():
                add_scaled(result, {legs[:i] + (u, v) + legs[i + 1 :]: sign * d})
    return {k: v for k, v in result.items() if not v.is_zero}


def format_chain(chain: Mapping[TensorWord, HSeries], fmt) -> str:
    return " + ".join(f"({c.to_expr()})*{'⊗'.join(fmt(w) for w in legs)}" for legs, c in chain.items()) or "0"


def check_coboundary_squares_to_zero(coproduct: AlgebraMap, length: int = 3) -> CheckResult:
    """Δ∘Δ = 0 on tensor words of one to ``length`` generator legs."""
    source = coproduct.source
    one = HSeries.one(source.order)
    defects = []
    for n in range(1, length + 1):
        for letters in product(source.letters, repeat=n):
            legs = tuple((g,) for g in letters)
            square = coboundary(coproduct, coboundary(coproduct, {legs: one}))
            if square:
                defects.append(("⊗".join(letters), format_chain(square, source.format_key)))
    return CheckResult.from_defects("coboundary_squares_to_zero", defects, length=length)
