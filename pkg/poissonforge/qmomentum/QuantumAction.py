import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from poissonforge.exactcoeff.HSeries import HSeries
from poissonforge.exceptions import InputException
from poissonforge.ncalg.AlgebraMap import AlgebraMap
from poissonforge.ncalg.NCPoly import NCPoly
from poissonforge.ncalg.Presentation import Presentation, Word
from poissonforge.ncalg.TensorAlgebra import TensorAlgebra
from poissonforge.qmomentum.ActionExpr import ActionExpr
from poissonforge.qmomentum.NCOneForm import NCOneForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationClaim:
    """Φ(lhs) = hbar**-hbar_divisor · Φ(rhs) as endomorphisms.

    ``claimed`` marks relations quoted from the literature rather than derived.
    """

    label: str
    lhs: NCPoly
    rhs: NCPoly
    hbar_divisor: int = 0
    claimed: bool = False


@dataclass(frozen=True, eq=False)
class QuantumAction:
    """A quantum group acting on a presented algebra through one expression per letter.

    ``group`` is presented without default commutation, so its normal words
    are the free words modulo the inverse pairs. The counit defaults to zero
    on letters it does not name.
    """

    name: str
    group: Presentation
    target: Presentation
    generators: Mapping[str, ActionExpr]
    coproduct: Optional[AlgebraMap] = None
    counit: Mapping[str, HSeries] = field(default_factory=dict)
    relations: Sequence[RelationClaim] = ()
    momentum: Mapping[str, NCOneForm] = field(default_factory=dict)

    def __post_init__(self):
        missing = [g for g in self.group.letters if g not in self.generators]
        if missing:
            raise InputException(f"{self.name}: no action given for {', '.join(missing)}", key=missing[0])
        extra = [g for g in self.generators if g not in self.group.letters]
        if extra:
            raise InputException(f"{self.name}: {extra[0]!r} is not a letter of {self.group.name}", key=extra[0])
        if self.coproduct is not None and self.coproduct.target != TensorAlgebra(self.group, 2):
            raise InputException(f"{self.name}: coproduct must land in the tensor square of {self.group.name}")
        for g, form in self.momentum.items():
            if g not in self.group.letters:
                raise InputException(f"{self.name}: momentum form for unknown letter {g!r}", key=g)
            if form.algebra is not self.target:
                raise InputException(f"{self.name}: momentum form of {g} lies outside {self.target.name}", key=g)
        for claim in self.relations:
            if claim.lhs.algebra is not self.group or claim.rhs.algebra is not self.group:
                raise InputException(f"{self.name}: relation {claim.label} is not in {self.group.name}")

    def epsilon(self, letter: str) -> HSeries:
        value = self.counit.get(letter)
        return value if value is not None else HSeries.zero(self.group.order)

    def apply_word(self, word: Word, f: NCPoly) -> NCPoly:
        """Φ(x1…xn)f = Φ(x1)(…Φ(xn)f)."""
        for letter in reversed(word):
            f = self.generators[letter].apply(f)
        return f

    def apply(self, x: NCPoly, f: NCPoly) -> NCPoly:
        if x.algebra is not self.group:
            raise InputException(f"{self.name}: {x} is not an element of {self.group.name}")
        if f.algebra is not self.target:
            raise InputException(f"{self.name}: {f} is not an element of {self.target.name}")
        total = self.target.zero
        for word, c in x.terms.items():
            total = total + self.apply_word(word, f).scale(c)
        return total

    def on_quotient(self, word: Word, f: NCPoly, quotient: Presentation) -> NCPoly:
        """Φ(word) on the class of ``f`` in a quotient sharing the target's letters."""
        lifted = self.target.element(f.terms, f.order)
        image = self.apply_word(word, lifted)
        return quotient.element(image.terms, image.order)

    def multi_apply(self, letters: Sequence[str], fs: Sequence[NCPoly]) -> NCPoly:
        """Φ(ξ1⊗…⊗ξn)(f1,…,fn) = Π_i μ(ξi)♯(fi), one factor per tensor leg."""
        if len(letters) != len(fs):
            raise InputException(f"{self.name}: {len(letters)} letters but {len(fs)} arguments")
        result = self.target.one
        for letter, f in zip(letters, fs):
            if letter not in self.momentum:
                raise InputException(f"{self.name}: no momentum form for {letter!r}", key=letter)
            result = result * self.momentum[letter].sharp().apply(f)
        return result
