from dataclasses import dataclass, field
from typing import Any, Mapping

from poissonforge.exceptions import InputException
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.Presentation import Presentation, Word
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra
from poissonforge.report import CheckResult


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    """A (possibly anti-) multiplicative map fixed by the images of all letters.

    The target is a presentation or one of its tensor powers; the counit
    targets the zeroth power.
    """

    name: str
    source: Presentation
    target: Any
    images: Mapping[str, NCPoly]
    anti: bool = False
    _cache: dict[Word, NCPoly] = field(init=False, repr=False)

    def __post_init__(self):
        missing = [g for g in self.source.letters if g not in self.images]
        if missing:
            raise InputException(f"{self.name}: no image for {', '.join(missing)}", key=missing[0])
        for g, image in self.images.items():
            if g not in self.source.letters:
                raise InputException(f"{self.name}: {g!r} is not a letter of {self.source.name}", key=g)
            if image.algebra != self.target:
                raise InputException(f"{self.name}: image of {g} lies outside the target", key=g)
        object.__setattr__(self, "images", dict(self.images))
        object.__setattr__(self, "_cache", {})

    @property
    def arity(self) -> int:
        return self.target.arity if isinstance(self.target, TensorAlgebra) else 1

    @property
    def target_one(self) -> NCPoly:
        return self.target.one

    def apply_word(self, word: Word) -> NCPoly:
        word = tuple(word)
        if word in self._cache:
            return self._cache[word]
        if not word:
            value = self.target_one
        elif self.anti:
            value = self.images[word[-1]] * self.apply_word(word[:-1])
        else:
            value = self.apply_word(word[:-1]) * self.images[word[-1]]
        self._cache[word] = value
        return value

    __call__ = apply_word

    def apply(self, p: NCPoly) -> NCPoly:
        if p.algebra is not self.source:
            raise InputException(f"{self.name} is defined on {self.source.name}")
        total = self.target.zero
        for w, c in p.terms.items():
            total = total + self.apply_word(w).scale(c)
        return total


def check_map(m: AlgebraMap) -> CheckResult:
    """The images satisfy every rewrite rule of the source."""
    defects = []
    for lhs, rhs in m.source.all_rules.items():
        right = m.target.zero
        for w, c in rhs.items():
            right = right + m.apply_word(w).scale(c)
        diff = m.apply_word(lhs) - right
        if not diff.is_zero:
            defects.append((m.source.format_key(lhs), diff))
    return CheckResult.from_defects(f"{m.name}_respects_relations", defects, anti=m.anti)
